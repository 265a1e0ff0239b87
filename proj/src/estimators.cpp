#include "tds/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace tds {

const char* estimator_name(Estimator e) {
    switch (e) {
        case Estimator::FF: return "FF";
        case Estimator::LOG: return "LOG";
        case Estimator::SEC: return "SEC";
        case Estimator::TIE: return "TIE";
    }
    return "?";
}

Estimator estimator_from_name(const std::string& name) {
    if (name == "FF" || name == "ff") return Estimator::FF;
    if (name == "LOG" || name == "log") return Estimator::LOG;
    if (name == "SEC" || name == "sec") return Estimator::SEC;
    if (name == "TIE" || name == "tie") return Estimator::TIE;
    throw InvalidParameter("unknown estimator '" + name + "'");
}

double empirical_copula_diag(const UniformSeries& useries, const Level& level) {
    if (useries.size() < 2) {
        throw InvalidSeries("uniform series must hold at least 2 values");
    }
    const auto& v = useries.values;
    const double u = level.u;
    std::size_t hits = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] <= u && v[i + 1] <= u) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(v.size() - 1);
}

EstimateReport lambda_ff(const UniformSeries& useries, const Level& level) {
    const CrossingCounts counts = count_crossings(useries, level);
    if (counts.exceedances == 0) {
        throw NoExceedances("no exceedances above u=" + std::to_string(level.u));
    }
    EstimateReport report;
    report.estimator = Estimator::FF;
    report.value = 1.0 - static_cast<double>(counts.upcrossings) /
                             static_cast<double>(counts.exceedances);
    report.level = level;
    report.counts = counts;
    report.sample_size = useries.size();
    return report;
}

EstimateReport lambda_log(const UniformSeries& useries, const Level& level) {
    const double c = empirical_copula_diag(useries, level);
    if (c <= 0.0) {
        throw DegenerateCopula("C_n(u,u) = 0 at u=" + std::to_string(level.u));
    }
    EstimateReport report;
    report.estimator = Estimator::LOG;
    report.value = 2.0 - std::log(c) / std::log(level.u);
    report.level = level;
    report.copula_diag = c;
    report.sample_size = useries.size();
    return report;
}

EstimateReport lambda_sec(const UniformSeries& useries, const Level& level) {
    const double c = empirical_copula_diag(useries, level);
    EstimateReport report;
    report.estimator = Estimator::SEC;
    report.value = 2.0 - (1.0 - c) / (1.0 - level.u);
    report.level = level;
    report.copula_diag = c;
    report.sample_size = useries.size();
    return report;
}

Level estimation_level(const UniformSeries& useries, double q) {
    Level level = sample_quantile_level(useries, q);
    const double top = *std::max_element(useries.values.begin(), useries.values.end());
    if (level.u == top) {
        double below = 0.0;
        for (double v : useries.values) {
            if (v < top) below = std::max(below, v);
        }
        level.u = below > 0.0 ? below : top / 2.0;
    }
    return level;
}

namespace {

template <typename Fn>
EstimateReport with_empirical_level(const TimeSeries& series, double q, Fn&& fn) {
    const UniformSeries useries = uniformize_empirical(series);
    return fn(useries, estimation_level(useries, q));
}

}  // namespace

EstimateReport lambda_ff(const TimeSeries& series, double q) {
    return with_empirical_level(series, q,
                                [](const auto& u, const auto& l) { return lambda_ff(u, l); });
}

EstimateReport lambda_log(const TimeSeries& series, double q) {
    return with_empirical_level(series, q,
                                [](const auto& u, const auto& l) { return lambda_log(u, l); });
}

EstimateReport lambda_sec(const TimeSeries& series, double q) {
    return with_empirical_level(series, q,
                                [](const auto& u, const auto& l) { return lambda_sec(u, l); });
}

EstimateReport tie_rate(const TimeSeries& series) {
    if (series.size() < 2) {
        throw InvalidSeries("series must hold at least 2 observations");
    }
    const auto& x = series.values;
    std::size_t ties = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (x[i] == x[i + 1]) ++ties;
    }
    EstimateReport report;
    report.estimator = Estimator::TIE;
    report.value = static_cast<double>(ties) / static_cast<double>(x.size() - 1);
    report.level = Level{0.5, LevelOrigin::Fixed, std::nullopt};  // unused by TIE
    report.sample_size = series.size();
    return report;
}

EstimateReport estimate(const TimeSeries& series, Estimator est, double q) {
    switch (est) {
        case Estimator::FF: return lambda_ff(series, q);
        case Estimator::LOG: return lambda_log(series, q);
        case Estimator::SEC: return lambda_sec(series, q);
        case Estimator::TIE: return tie_rate(series);
    }
    throw InvalidParameter("unknown estimator");
}

}  // namespace tds
