#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tds/rng.hpp"
#include "tds/series.hpp"

namespace tds {

// X_n = max(c X_{n-1}, (1-c) Z_n), unit Frechet innovations. lambda = c.
struct Mar1 {
    double c;
};

// X_n = max(c Z_n, (1-c) Z_{n-1}), unit Frechet innovations. lambda = min(c, 1-c).
struct Mma1 {
    double c;
};

// X_n = min(p^{-1/alpha} X_{n-1}, eps_n / (1 - U_n)) with Pareto(III)(0,sigma,alpha)
// innovations, Bernoulli(p) switches and the 1/0 == +inf convention. lambda = p.
struct Yarp1 {
    double p;
    double sigma = 1.0;
    double alpha = 1.0;
};

// X_n = max_s a_{s,n}^alpha Z_s^alpha with Frechet(alpha) factors Z_s drawn once.
// weights: rows are factors s, columns are time indices n (1-based).
struct RFactor {
    double alpha = 1.0;
    std::vector<std::vector<double>> weights;
};

// Stopped clock: X_n repeats X_{n-1} while the state chain reads 0, otherwise
// records a fresh unit-Frechet Y_n. Short failures: no two consecutive zeros,
// stationary stop probability q.
struct StoppedClock {
    double q;
};

using ModelSpec = std::variant<Mar1, Mma1, Yarp1, RFactor, StoppedClock>;

// Quantile functions (inverse transforms), exposed for tests and oracles.
double unit_frechet_quantile(double u);                              // -1/ln u
double pareto3_quantile(double v, double sigma, double alpha);       // sigma (v/(1-v))^{1/alpha}

double sample_unit_frechet(UniformStream& rng);

// Single recursion steps, exposed so tests can pin the update rules.
double mar1_step(double c, double prev, double innovation);
double mma1_step(double c, double z_curr, double z_prev);
// keep == (U_n == 1): the second argument of the min is +inf.
double yarp1_step(double p, double alpha, double prev, double eps, bool keep);

void validate(const ModelSpec& spec);
std::string model_name(const ModelSpec& spec);

// c / p / q / alpha, whichever names the model's headline parameter.
double model_param(const ModelSpec& spec);

// Known true tail dependence coefficient, when the model has one.
std::optional<double> true_lambda(const ModelSpec& spec);

// Marginal d.f. of X_index under the model (index only matters for RFactor).
std::function<double(double)> marginal_cdf(const ModelSpec& spec, long index = 1);

TimeSeries simulate(const ModelSpec& spec, std::size_t length, Seed seed);

TimeSeries simulate_mar1(double c, std::size_t length, Seed seed);
TimeSeries simulate_mma1(double c, std::size_t length, Seed seed);
TimeSeries simulate_yarp1(double p, double sigma, double alpha, std::size_t length, Seed seed);
TimeSeries simulate_rfactor(const RFactor& spec, std::size_t length, Seed seed);
TimeSeries simulate_stopped_clock(double q, std::size_t length, Seed seed);

}  // namespace tds
