#include "tds/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tds {

namespace {

constexpr double kLambdaTol = 1e-12;

void check_block(long n, long m) {
    if (!(n < m)) {
        throw InvalidParameter("block requires n < m, got n=" + std::to_string(n) +
                               ", m=" + std::to_string(m));
    }
}

void check_columns(const SpectralWeights& w, long lo, long hi) {
    if (lo < 1 || static_cast<std::size_t>(hi) > w.columns()) {
        throw IndexError("weight columns " + std::to_string(lo) + ".." + std::to_string(hi) +
                         " outside 1.." + std::to_string(w.columns()));
    }
}

}  // namespace

SpectralWeights SpectralWeights::from_raw(const std::vector<std::vector<double>>& a,
                                          double alpha) {
    if (a.empty() || a.front().empty()) {
        throw InvalidParameter("weight matrix must be non-empty");
    }
    if (!(alpha > 0.0)) {
        throw InvalidParameter("alpha must be positive");
    }
    const std::size_t cols = a.front().size();
    for (const auto& row : a) {
        if (row.size() != cols) {
            throw InvalidParameter("weight rows must have equal length");
        }
    }
    SpectralWeights w;
    w.b.assign(a.size(), std::vector<double>(cols, 0.0));
    for (std::size_t n = 0; n < cols; ++n) {
        double sum = 0.0;
        for (std::size_t s = 0; s < a.size(); ++s) {
            if (!(a[s][n] >= 0.0) || !std::isfinite(a[s][n])) {
                throw InvalidParameter("weights must be finite and non-negative");
            }
            sum += std::pow(a[s][n], alpha);
        }
        if (!(sum > 0.0)) {
            throw InvalidParameter("weight column " + std::to_string(n + 1) + " sums to zero");
        }
        for (std::size_t s = 0; s < a.size(); ++s) {
            w.b[s][n] = std::pow(a[s][n], alpha) / sum;
        }
    }
    return w;
}

SpectralWeights SpectralWeights::from_normalized(std::vector<std::vector<double>> b) {
    if (b.empty() || b.front().empty()) {
        throw InvalidParameter("weight matrix must be non-empty");
    }
    const std::size_t cols = b.front().size();
    for (const auto& row : b) {
        if (row.size() != cols) {
            throw InvalidParameter("weight rows must have equal length");
        }
    }
    for (std::size_t n = 0; n < cols; ++n) {
        double sum = 0.0;
        for (const auto& row : b) sum += row[n];
        if (std::abs(sum - 1.0) > 1e-9) {
            throw InvalidParameter("column " + std::to_string(n + 1) +
                                   " is not a probability vector (sum " + std::to_string(sum) + ")");
        }
    }
    SpectralWeights w;
    w.b = std::move(b);
    return w;
}

SmoothnessValue smoothness_from_pairwise(const PairwiseLambda& lambda, long n, long m) {
    check_block(n, m);
    double sum = 0.0;
    for (long i = n; i <= m; ++i) {
        for (long j : {i - 1, i + 1}) {
            const auto v = lambda(i, j);
            if (!v) {
                throw MissingPair("lambda(" + std::to_string(j) + "|" + std::to_string(i) +
                                  ") undefined");
            }
            if (!(*v >= -kLambdaTol && *v <= 1.0 + kLambdaTol)) {
                throw InvalidLambda("lambda(" + std::to_string(j) + "|" + std::to_string(i) +
                                    ") = " + std::to_string(*v) + " outside [0,1]");
            }
            sum += std::clamp(*v, 0.0, 1.0);
        }
    }
    SmoothnessValue out;
    out.s = sum / (2.0 * static_cast<double>(m - n + 1));
    out.block_begin = n;
    out.block_end = m;
    return out;
}

double rfactor_pairwise_lambda(const SpectralWeights& weights, long i, long j) {
    check_columns(weights, std::min(i, j), std::max(i, j));
    double sum_max = 0.0;
    for (const auto& row : weights.b) {
        sum_max += std::max(row[static_cast<std::size_t>(i - 1)],
                            row[static_cast<std::size_t>(j - 1)]);
    }
    return std::clamp(2.0 - sum_max, 0.0, 1.0);
}

SmoothnessValue rfactor_smoothness(const SpectralWeights& weights, long n, long m) {
    check_block(n, m);
    check_columns(weights, n - 1, m + 1);
    double sum_max = 0.0;
    for (long i = n; i <= m; ++i) {
        for (const auto& row : weights.b) {
            const double bi = row[static_cast<std::size_t>(i - 1)];
            sum_max += std::max(row[static_cast<std::size_t>(i - 2)], bi);
            sum_max += std::max(bi, row[static_cast<std::size_t>(i)]);
        }
    }
    SmoothnessValue out;
    out.s = 2.0 - sum_max / (2.0 * static_cast<double>(m - n + 1));
    out.block_begin = n;
    out.block_end = m;
    return out;
}

double stopped_clock_pairwise_lambda(double q) {
    if (!(q >= 0.0 && q < 0.5)) {
        throw InvalidParameter("q must lie in [0, 1/2), got " + std::to_string(q));
    }
    // stationary chain: P(Z_i=1, Z_{i+1}=0) = p_1 * q/(1-q) = q
    return q;
}

LimitResult numeric_lambda_limit(const std::function<double(double)>& joint_tail,
                                 std::vector<double> u_grid) {
    if (u_grid.empty()) {
        for (int k = 2; k <= 8; ++k) {
            u_grid.push_back(1.0 - std::pow(10.0, -k));
        }
    }
    if (u_grid.size() < 2) {
        throw InvalidParameter("u grid needs at least 2 points");
    }
    if (!std::is_sorted(u_grid.begin(), u_grid.end())) {
        throw InvalidParameter("u grid must increase toward 1");
    }
    std::vector<double> estimates;
    estimates.reserve(u_grid.size());
    for (double u : u_grid) {
        if (!(u > 0.0 && u < 1.0)) {
            throw InvalidParameter("grid points must lie in (0,1)");
        }
        estimates.push_back(2.0 - (1.0 - joint_tail(u)) / (1.0 - u));
    }
    const std::size_t k = estimates.size();
    const double last_diff = std::abs(estimates[k - 1] - estimates[k - 2]);
    const double first_diff = std::abs(estimates[1] - estimates[0]);
    // floating noise dominates near u=1; only flag clearly diverging sequences
    if (last_diff > std::max(1e-6, first_diff)) {
        throw NoLimit("grid estimates do not settle (last spread " +
                      std::to_string(last_diff) + ")");
    }
    // linear extrapolation in h = 1-u from the last two points
    const double h1 = 1.0 - u_grid[k - 2];
    const double h2 = 1.0 - u_grid[k - 1];
    LimitResult out;
    out.value = (h1 * estimates[k - 1] - h2 * estimates[k - 2]) / (h1 - h2);
    out.spread = last_diff;
    return out;
}

}  // namespace tds
