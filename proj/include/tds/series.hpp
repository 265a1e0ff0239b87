#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tds/errors.hpp"

namespace tds {

// An ordered block of real observations {X_i, i = start_index, ...} with
// optional provenance left by a model sampler.
struct TimeSeries {
    std::vector<double> values;
    long start_index = 1;
    std::string model_tag;               // empty for raw data
    std::optional<double> true_lambda;   // attached by samplers when known

    // Validates: length >= 2 and every value finite.
    static TimeSeries create(std::vector<double> values, long start_index = 1,
                             std::string model_tag = {},
                             std::optional<double> true_lambda = std::nullopt);

    std::size_t size() const { return values.size(); }
};

enum class UniformSource { TheoreticalCdf, EmpiricalRanks };

// The probability-integral-transformed series F_i(X_i), values strictly in (0,1).
struct UniformSeries {
    std::vector<double> values;
    UniformSource source = UniformSource::EmpiricalRanks;

    std::size_t size() const { return values.size(); }
};

enum class LevelOrigin { Fixed, SampleQuantile };

struct Level {
    double u = 0.0;                    // strictly in (0,1)
    LevelOrigin origin = LevelOrigin::Fixed;
    std::optional<double> quantile;    // set when origin == SampleQuantile

    static Level fixed(double u);
};

struct CrossingCounts {
    std::size_t upcrossings = 0;   // U(u)
    std::size_t exceedances = 0;   // E(u)
    Level level;
    std::size_t series_length = 0;
};

// Per-index distribution function, cdf(i, x) with i the series index.
using IndexedCdf = std::function<double(long index, double x)>;

// Empirical transform r_i/(L+1) where r_i is the max rank among tied values.
UniformSeries uniformize_empirical(const TimeSeries& series);

// Theoretical transform F_i(X_i), clamped away from {0,1} by a machine-eps guard.
UniformSeries uniformize_theoretical(const TimeSeries& series, const IndexedCdf& cdf);

// E(u) over all L indices, U(u) over the L-1 adjacent pairs (v_i <= u < v_{i+1}).
CrossingCounts count_crossings(const UniformSeries& useries, const Level& level);

// Empirical q-quantile: the value at index ceil(q*L) (1-based) of the sorted values.
Level sample_quantile_level(const UniformSeries& useries, double q);

}  // namespace tds
