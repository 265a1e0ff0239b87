#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tds/errors.hpp"

namespace tds {

// Pairwise tail dependence provider lambda(j|i); returns nullopt where undefined.
using PairwiseLambda = std::function<std::optional<double>(long i, long j)>;

struct SmoothnessValue {
    double s = 0.0;        // in [0,1]
    long block_begin = 0;  // n
    long block_end = 0;    // m, with n < m
};

// Column-normalized factor weights b_{s,n} = a_{s,n}^alpha / sum_s a_{s,n}^alpha.
// Rows are factors, columns are time; every column is a probability vector.
struct SpectralWeights {
    std::vector<std::vector<double>> b;

    static SpectralWeights from_raw(const std::vector<std::vector<double>>& a, double alpha);
    static SpectralWeights from_normalized(std::vector<std::vector<double>> b);

    std::size_t factors() const { return b.size(); }
    std::size_t columns() const { return b.empty() ? 0 : b.front().size(); }
};

// S_{n,m} = (1/(2(m-n+1))) sum_{i=n}^{m} sum_{j in {i-1,i+1}} lambda(j|i).
// The provider must also cover the boundary neighbors n-1 and m+1.
SmoothnessValue smoothness_from_pairwise(const PairwiseLambda& lambda, long n, long m);

// lambda(j|i) = 2 - sum_s max(b_{s,i}, b_{s,j}); columns are 1-based.
double rfactor_pairwise_lambda(const SpectralWeights& weights, long i, long j);

// Closed form for the factor model; needs columns n-1 through m+1.
SmoothnessValue rfactor_smoothness(const SpectralWeights& weights, long n, long m);

// Short-failures stopped clock: lambda(i+1|i) = P(Z_i=1, Z_{i+1}=0) = q.
double stopped_clock_pairwise_lambda(double q);

struct LimitResult {
    double value = 0.0;
    double spread = 0.0;  // |last - second-to-last| grid estimate
};

// Numeric oracle for lambda = 2 - lim_{u->1} (1 - joint_tail(u)) / (1 - u),
// where joint_tail(u) = P(F_i(X_i) <= u, F_j(X_j) <= u). Extrapolates linearly
// in 1-u from the last two grid points; default grid u = 1 - 10^{-k}, k=2..8.
LimitResult numeric_lambda_limit(const std::function<double(double)>& joint_tail,
                                 std::vector<double> u_grid = {});

}  // namespace tds
