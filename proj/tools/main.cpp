#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tds/csv.hpp"
#include "tds/estimators.hpp"
#include "tds/models.hpp"
#include "tds/montecarlo.hpp"
#include "tds/theory.hpp"

namespace {

struct ModelFlags {
    std::string model;
    double c = 0.5;
    double p = 0.5;
    double sigma = 1.0;
    double alpha = 1.0;
    double stop_prob = 0.0;
    std::string weights_file;
};

// Registers the model parameter flags on a subcommand. stop_flag_name lets the
// experiment subcommand keep --q for the quantile level.
void add_model_flags(CLI::App* sub, ModelFlags& flags, const std::string& stop_flag_name) {
    sub->add_option("--model", flags.model, "model: mar1|mma1|yarp1|rfactor|stopped_clock")
        ->required();
    sub->add_option("--c", flags.c, "MAR(1)/MMA(1) parameter c in (0,1)");
    sub->add_option("--p", flags.p, "YARP(1) parameter p in (0,1)");
    sub->add_option("--sigma", flags.sigma, "YARP(1) Pareto(III) scale")->capture_default_str();
    sub->add_option("--alpha", flags.alpha, "YARP(1)/rfactor shape alpha")->capture_default_str();
    sub->add_option(stop_flag_name, flags.stop_prob, "stopped-clock stop probability in [0,1/2)");
    sub->add_option("--weights-file", flags.weights_file,
                    "rfactor weights CSV (rows: factors, columns: time)");
}

tds::ModelSpec build_model(const ModelFlags& flags) {
    if (flags.model == "mar1") return tds::Mar1{flags.c};
    if (flags.model == "mma1") return tds::Mma1{flags.c};
    if (flags.model == "yarp1") return tds::Yarp1{flags.p, flags.sigma, flags.alpha};
    if (flags.model == "stopped_clock") return tds::StoppedClock{flags.stop_prob};
    if (flags.model == "rfactor") {
        if (flags.weights_file.empty()) {
            throw tds::InvalidParameter("rfactor needs --weights-file");
        }
        return tds::RFactor{flags.alpha, tds::read_weights_csv_file(flags.weights_file)};
    }
    throw tds::InvalidParameter("unknown model '" + flags.model + "'");
}

int cmd_simulate(const ModelFlags& flags, std::size_t length, std::uint64_t seed,
                 const std::string& out_path) {
    const tds::ModelSpec spec = build_model(flags);
    tds::validate(spec);
    const tds::TimeSeries series = tds::simulate(spec, length, tds::Seed{seed, 0});
    tds::write_series_csv_file(out_path, series);
    if (series.true_lambda) {
        std::cout << "true lambda: " << tds::format_double(*series.true_lambda) << "\n";
    } else {
        std::cout << "true lambda: n/a\n";
    }
    std::cout << "wrote " << series.size() << " rows to " << out_path << "\n";
    return 0;
}

int cmd_estimate(const std::string& input, double q, const std::vector<std::string>& names,
                 const std::string& out_path) {
    const tds::TimeSeries series = tds::read_series_csv_file(input);
    std::vector<tds::EstimateReport> reports;
    for (const auto& name : names) {
        reports.push_back(tds::estimate(series, tds::estimator_from_name(name), q));
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw tds::ValidationError("cannot open '" + out_path + "' for writing");
    tds::write_estimates_csv(out, reports);
    for (const auto& r : reports) {
        std::cout << tds::estimator_name(r.estimator) << ": " << tds::format_double(r.value)
                  << "\n";
    }
    return 0;
}

int cmd_theory(const ModelFlags& flags, long from, long to, bool oracle) {
    if (flags.model == "stopped_clock") {
        const double lambda = tds::stopped_clock_pairwise_lambda(flags.stop_prob);
        std::cout << "lambda(i+1|i) = " << tds::format_double(lambda) << "\n";
        std::cout << "S = " << tds::format_double(lambda) << " (any block)\n";
        return 0;
    }
    if (flags.model != "rfactor") {
        throw tds::InvalidParameter("theory supports --model rfactor or stopped_clock");
    }
    if (flags.weights_file.empty()) {
        throw tds::InvalidParameter("rfactor needs --weights-file");
    }
    const auto raw = tds::read_weights_csv_file(flags.weights_file);
    const auto weights = tds::SpectralWeights::from_raw(raw, flags.alpha);
    const long cols = static_cast<long>(weights.columns());
    if (to == 0) to = cols - 1;
    if (from - 1 < 1 || to + 1 > cols) {
        throw tds::IndexError("block " + std::to_string(from) + ".." + std::to_string(to) +
                              " needs boundary columns " + std::to_string(from - 1) + " and " +
                              std::to_string(to + 1) + " inside 1.." + std::to_string(cols));
    }
    for (long i = from; i <= to; ++i) {
        for (long j : {i - 1, i + 1}) {
            const double lambda = tds::rfactor_pairwise_lambda(weights, i, j);
            std::cout << "lambda(" << j << "|" << i << ") = " << tds::format_double(lambda);
            if (oracle) {
                // independent route: joint d.f. from the factor representation
                auto joint = [&](double u) {
                    double vi = 0.0, vj = 0.0;
                    for (const auto& row : raw) {
                        vi += std::pow(row[static_cast<std::size_t>(i - 1)], flags.alpha);
                        vj += std::pow(row[static_cast<std::size_t>(j - 1)], flags.alpha);
                    }
                    vi /= -std::log(u);
                    vj /= -std::log(u);
                    double log_p = 0.0;
                    for (const auto& row : raw) {
                        const double ai = std::pow(row[static_cast<std::size_t>(i - 1)], flags.alpha);
                        const double aj = std::pow(row[static_cast<std::size_t>(j - 1)], flags.alpha);
                        log_p -= std::max(ai / vi, aj / vj);
                    }
                    return std::exp(log_p);
                };
                const auto limit = tds::numeric_lambda_limit(joint);
                std::cout << "  (oracle " << tds::format_double(limit.value) << ", discrepancy "
                          << tds::format_double(std::abs(limit.value - lambda)) << ")";
            }
            std::cout << "\n";
        }
    }
    const auto s_closed = tds::rfactor_smoothness(weights, from, to);
    std::cout << "S_" << from << "," << to << " = " << tds::format_double(s_closed.s) << "\n";
    return 0;
}

int cmd_experiment(const ModelFlags& flags, std::optional<double> truth, int replicas, int n,
                   double q, std::uint64_t seed, int workers, const std::string& abias_mode,
                   const std::string& out_path) {
    tds::ExperimentConfig config;
    config.models.push_back({build_model(flags), truth});
    config.replicas = replicas;
    config.sample_size = n;
    config.quantile = q;
    config.master_seed = seed;
    config.workers = workers;
    config.abias_mode = tds::abias_mode_from_name(abias_mode);
    const auto results = tds::run_experiment(config);
    tds::write_results_csv_file(out_path, results);
    int skipped = 0;
    for (const auto& r : results) skipped += r.skipped;
    std::cout << "wrote " << results.size() << " cells to " << out_path;
    if (skipped > 0) std::cout << " (" << skipped << " skipped replicas)";
    std::cout << "\n";
    return 0;
}

int cmd_table1(std::uint64_t seed, int workers, const std::string& abias_mode,
               const std::string& out_path, const std::string& compare_path) {
    const auto report =
        tds::reproduce_table1(seed, workers, tds::abias_mode_from_name(abias_mode));
    tds::write_results_csv_file(out_path, report.results);
    tds::write_comparison_csv_file(compare_path, report.comparison);
    int failures = 0;
    for (const auto& row : report.comparison) {
        if (!row.pass) {
            ++failures;
            std::cout << "outside tolerance: " << row.ours.model << " param "
                      << tds::format_double(row.ours.param) << " "
                      << tds::estimator_name(row.ours.estimator) << " (|d_abias| "
                      << tds::format_double(row.diff_abias) << ", |d_rmse| "
                      << tds::format_double(row.diff_rmse) << ", tol "
                      << tds::format_double(row.tolerance) << ")\n";
        }
    }
    std::cout << (report.comparison.size() - failures) << "/" << report.comparison.size()
              << " cells within tolerance\n";
    return report.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tail dependence and trajectory-smoothness toolkit", "tailsmooth"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Sample a model and write a series CSV");
    sim->set_config("--config");
    ModelFlags sim_flags;
    std::size_t sim_n = 1000;
    std::uint64_t sim_seed = 42;
    std::string sim_out;
    add_model_flags(sim, sim_flags, "--q");
    sim->add_option("--n", sim_n, "series length")->capture_default_str();
    sim->add_option("--seed", sim_seed, "master seed")->capture_default_str();
    sim->add_option("--out", sim_out, "output series CSV path")->required();

    // estimate
    auto* est = app.add_subcommand("estimate", "Run tail dependence estimators on a series CSV");
    est->set_config("--config");
    std::string est_input, est_out;
    double est_q = 0.95;
    std::vector<std::string> est_names = {"ff", "log", "sec"};
    est->add_option("--input", est_input, "input series CSV")->required();
    est->add_option("--q", est_q, "sample quantile for the level u")->capture_default_str();
    est->add_option("--estimators", est_names, "subset of ff,log,sec,tie")->delimiter(',');
    est->add_option("--out", est_out, "output estimates CSV path")->required();

    // theory
    auto* theo = app.add_subcommand("theory", "Closed-form pairwise lambda and smoothness");
    theo->set_config("--config");
    ModelFlags theo_flags;
    long theo_from = 2, theo_to = 0;
    bool theo_oracle = false;
    add_model_flags(theo, theo_flags, "--q");
    theo->add_option("--from", theo_from, "block start n (needs column n-1)")->capture_default_str();
    theo->add_option("--to", theo_to, "block end m (0: last usable column)")->capture_default_str();
    theo->add_flag("--oracle", theo_oracle, "cross-check against the numeric limit oracle");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Replicated bias/rmse study for one model");
    exp->set_config("--config");
    ModelFlags exp_flags;
    std::optional<double> exp_truth;
    int exp_replicas = 200, exp_n = 1000, exp_workers = 0;
    double exp_q = 0.95;
    std::uint64_t exp_seed = 42;
    std::string exp_out, exp_abias = "bias";
    add_model_flags(exp, exp_flags, "--stop-prob");
    exp->add_option("--truth", exp_truth, "override the true lambda");
    exp->add_option("--replicas", exp_replicas, "number of replicas")->capture_default_str();
    exp->add_option("--n", exp_n, "sample size per replica")->capture_default_str();
    exp->add_option("--q", exp_q, "sample quantile for the level u")->capture_default_str();
    exp->add_option("--seed", exp_seed, "master seed")->capture_default_str();
    exp->add_option("--workers", exp_workers, "worker threads (0: all cores)")->capture_default_str();
    exp->add_option("--abias-mode", exp_abias, "abias definition: bias|mae")->capture_default_str();
    exp->add_option("--out", exp_out, "output results CSV path")->required();

    // table1
    auto* tab = app.add_subcommand("table1", "Reproduce the reference simulation table");
    tab->set_config("--config");
    std::uint64_t tab_seed = 42;
    int tab_workers = 0;
    std::string tab_out, tab_compare, tab_abias = "mae";
    tab->add_option("--seed", tab_seed, "master seed")->capture_default_str();
    tab->add_option("--workers", tab_workers, "worker threads (0: all cores)")->capture_default_str();
    tab->add_option("--abias-mode", tab_abias, "abias definition: bias|mae")->capture_default_str();
    tab->add_option("--out", tab_out, "output results CSV path")->required();
    tab->add_option("--compare", tab_compare, "output comparison CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_flags, sim_n, sim_seed, sim_out);
        if (est->parsed()) return cmd_estimate(est_input, est_q, est_names, est_out);
        if (theo->parsed()) return cmd_theory(theo_flags, theo_from, theo_to, theo_oracle);
        if (exp->parsed()) {
            return cmd_experiment(exp_flags, exp_truth, exp_replicas, exp_n, exp_q, exp_seed,
                                  exp_workers, exp_abias, exp_out);
        }
        if (tab->parsed()) return cmd_table1(tab_seed, tab_workers, tab_abias, tab_out, tab_compare);
    } catch (const tds::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
