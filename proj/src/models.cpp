#include "tds/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tds {

namespace {

void check_unit_interval(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) {
        throw InvalidParameter(std::string(name) + " must lie in (0,1), got " +
                               std::to_string(x));
    }
}

void check_positive(double x, const char* name) {
    if (!(x > 0.0)) {
        throw InvalidParameter(std::string(name) + " must be positive, got " +
                               std::to_string(x));
    }
}

void check_length(std::size_t length) {
    if (length < 2) {
        throw InvalidParameter("length must be at least 2, got " + std::to_string(length));
    }
}

double column_weight_sum(const RFactor& spec, std::size_t col) {
    double sum = 0.0;
    for (const auto& row : spec.weights) {
        sum += std::pow(row[col], spec.alpha);
    }
    return sum;
}

}  // namespace

double unit_frechet_quantile(double u) { return -1.0 / std::log(u); }

double pareto3_quantile(double v, double sigma, double alpha) {
    return sigma * std::pow(v / (1.0 - v), 1.0 / alpha);
}

double sample_unit_frechet(UniformStream& rng) { return unit_frechet_quantile(rng.next()); }

double mar1_step(double c, double prev, double innovation) {
    return std::max(c * prev, (1.0 - c) * innovation);
}

double mma1_step(double c, double z_curr, double z_prev) {
    return std::max(c * z_curr, (1.0 - c) * z_prev);
}

double yarp1_step(double p, double alpha, double prev, double eps, bool keep) {
    const double scaled = std::pow(p, -1.0 / alpha) * prev;
    return keep ? scaled : std::min(scaled, eps);
}

void validate(const ModelSpec& spec) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Mar1> || std::is_same_v<T, Mma1>) {
                check_unit_interval(m.c, "c");
            } else if constexpr (std::is_same_v<T, Yarp1>) {
                check_unit_interval(m.p, "p");
                check_positive(m.sigma, "sigma");
                check_positive(m.alpha, "alpha");
            } else if constexpr (std::is_same_v<T, RFactor>) {
                check_positive(m.alpha, "alpha");
                if (m.weights.empty() || m.weights.front().empty()) {
                    throw InvalidParameter("rfactor weights matrix must be non-empty");
                }
                const std::size_t cols = m.weights.front().size();
                for (const auto& row : m.weights) {
                    if (row.size() != cols) {
                        throw InvalidParameter("rfactor weight rows must have equal length");
                    }
                    for (double a : row) {
                        if (!(a >= 0.0) || !std::isfinite(a)) {
                            throw InvalidParameter("rfactor weights must be finite and non-negative");
                        }
                    }
                }
                for (std::size_t n = 0; n < cols; ++n) {
                    double sum = 0.0;
                    for (const auto& row : m.weights) sum += row[n];
                    if (!(sum > 0.0)) {
                        throw InvalidParameter("rfactor weight column " + std::to_string(n + 1) +
                                               " sums to zero");
                    }
                }
            } else if constexpr (std::is_same_v<T, StoppedClock>) {
                if (!(m.q >= 0.0 && m.q < 0.5)) {
                    throw InvalidParameter("q must lie in [0, 1/2), got " + std::to_string(m.q));
                }
            }
        },
        spec);
}

std::string model_name(const ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Mar1>) return "mar1";
            else if constexpr (std::is_same_v<T, Mma1>) return "mma1";
            else if constexpr (std::is_same_v<T, Yarp1>) return "yarp1";
            else if constexpr (std::is_same_v<T, RFactor>) return "rfactor";
            else return "stopped_clock";
        },
        spec);
}

double model_param(const ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Mar1> || std::is_same_v<T, Mma1>) return m.c;
            else if constexpr (std::is_same_v<T, Yarp1>) return m.p;
            else if constexpr (std::is_same_v<T, RFactor>) return m.alpha;
            else return m.q;
        },
        spec);
}

std::optional<double> true_lambda(const ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> std::optional<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Mar1>) return m.c;
            else if constexpr (std::is_same_v<T, Mma1>) return std::min(m.c, 1.0 - m.c);
            else if constexpr (std::is_same_v<T, Yarp1>) return m.p;
            else if constexpr (std::is_same_v<T, RFactor>) {
                if (m.weights.size() == 1) return 1.0;  // single factor: total dependence
                return std::nullopt;                    // non-stationary in general
            } else {
                return m.q;
            }
        },
        spec);
}

std::function<double(double)> marginal_cdf(const ModelSpec& spec, long index) {
    return std::visit(
        [index](const auto& m) -> std::function<double(double)> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Yarp1>) {
                const double sigma = m.sigma;
                const double alpha = m.alpha;
                return [sigma, alpha](double x) {
                    if (x <= 0.0) return 0.0;
                    return 1.0 - 1.0 / (1.0 + std::pow(x / sigma, alpha));
                };
            } else if constexpr (std::is_same_v<T, RFactor>) {
                if (index < 1 || static_cast<std::size_t>(index) > m.weights.front().size()) {
                    throw IndexError("rfactor marginal index " + std::to_string(index) +
                                     " outside weight columns");
                }
                const double scale = column_weight_sum(m, static_cast<std::size_t>(index - 1));
                return [scale](double x) {
                    if (x <= 0.0) return 0.0;
                    return std::exp(-scale / x);
                };
            } else {
                return [](double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); };
            }
        },
        spec);
}

TimeSeries simulate_mar1(double c, std::size_t length, Seed seed) {
    check_unit_interval(c, "c");
    check_length(length);
    UniformStream rng(seed);
    std::vector<double> x;
    x.reserve(length);
    double prev = sample_unit_frechet(rng);  // exact stationary start
    for (std::size_t n = 0; n < length; ++n) {
        prev = mar1_step(c, prev, sample_unit_frechet(rng));
        x.push_back(prev);
    }
    return TimeSeries::create(std::move(x), 1, "mar1", c);
}

TimeSeries simulate_mma1(double c, std::size_t length, Seed seed) {
    check_unit_interval(c, "c");
    check_length(length);
    UniformStream rng(seed);
    std::vector<double> x;
    x.reserve(length);
    double z_prev = sample_unit_frechet(rng);  // Z_0
    for (std::size_t n = 0; n < length; ++n) {
        const double z = sample_unit_frechet(rng);
        x.push_back(mma1_step(c, z, z_prev));
        z_prev = z;
    }
    return TimeSeries::create(std::move(x), 1, "mma1", std::min(c, 1.0 - c));
}

TimeSeries simulate_yarp1(double p, double sigma, double alpha, std::size_t length, Seed seed) {
    check_unit_interval(p, "p");
    check_positive(sigma, "sigma");
    check_positive(alpha, "alpha");
    check_length(length);
    UniformStream rng(seed);
    std::vector<double> x;
    x.reserve(length);
    double prev = pareto3_quantile(rng.next(), sigma, alpha);  // exact stationary start
    for (std::size_t n = 0; n < length; ++n) {
        const double eps = pareto3_quantile(rng.next(), sigma, alpha);
        const bool keep = rng.bernoulli(p);
        prev = yarp1_step(p, alpha, prev, eps, keep);
        x.push_back(prev);
    }
    return TimeSeries::create(std::move(x), 1, "yarp1", p);
}

TimeSeries simulate_rfactor(const RFactor& spec, std::size_t length, Seed seed) {
    validate(ModelSpec{spec});
    check_length(length);
    const std::size_t cols = spec.weights.front().size();
    if (length > cols) {
        throw InsufficientWeights("requested length " + std::to_string(length) +
                                  " exceeds " + std::to_string(cols) + " weight columns");
    }
    UniformStream rng(seed);
    // Z_s^alpha is exactly unit Frechet under the inverse transform
    std::vector<double> factor_pow;
    factor_pow.reserve(spec.weights.size());
    for (std::size_t s = 0; s < spec.weights.size(); ++s) {
        factor_pow.push_back(sample_unit_frechet(rng));
    }
    std::vector<double> x;
    x.reserve(length);
    for (std::size_t n = 0; n < length; ++n) {
        double best = 0.0;
        for (std::size_t s = 0; s < spec.weights.size(); ++s) {
            best = std::max(best, std::pow(spec.weights[s][n], spec.alpha) * factor_pow[s]);
        }
        x.push_back(best);
    }
    auto lambda = spec.weights.size() == 1 ? std::optional<double>(1.0) : std::nullopt;
    return TimeSeries::create(std::move(x), 1, "rfactor", lambda);
}

TimeSeries simulate_stopped_clock(double q, std::size_t length, Seed seed) {
    if (!(q >= 0.0 && q < 0.5)) {
        throw InvalidParameter("q must lie in [0, 1/2), got " + std::to_string(q));
    }
    check_length(length);
    UniformStream rng(seed);
    std::vector<double> x;
    x.reserve(length);
    // Z chain: P(Z=0)=q stationary, P(next=1|0)=1, P(next=0|1)=q/(1-q);
    // no two consecutive zeros by construction.
    bool z_zero = rng.bernoulli(q);  // Z_1 from the stationary law
    x.push_back(sample_unit_frechet(rng));  // X_1 = Y_1
    const double stop_given_record = q > 0.0 ? q / (1.0 - q) : 0.0;
    for (std::size_t n = 1; n < length; ++n) {
        z_zero = z_zero ? false : rng.bernoulli(stop_given_record);
        if (z_zero) {
            x.push_back(x.back());
        } else {
            x.push_back(sample_unit_frechet(rng));
        }
    }
    return TimeSeries::create(std::move(x), 1, "stopped_clock", q);
}

TimeSeries simulate(const ModelSpec& spec, std::size_t length, Seed seed) {
    return std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Mar1>) return simulate_mar1(m.c, length, seed);
            else if constexpr (std::is_same_v<T, Mma1>) return simulate_mma1(m.c, length, seed);
            else if constexpr (std::is_same_v<T, Yarp1>)
                return simulate_yarp1(m.p, m.sigma, m.alpha, length, seed);
            else if constexpr (std::is_same_v<T, RFactor>) return simulate_rfactor(m, length, seed);
            else return simulate_stopped_clock(m.q, length, seed);
        },
        spec);
}

}  // namespace tds
