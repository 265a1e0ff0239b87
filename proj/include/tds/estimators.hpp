#pragma once

#include <optional>
#include <string>

#include "tds/series.hpp"

namespace tds {

enum class Estimator { FF, LOG, SEC, TIE };

const char* estimator_name(Estimator e);
Estimator estimator_from_name(const std::string& name);

struct EstimateReport {
    Estimator estimator = Estimator::FF;
    double value = 0.0;
    Level level;
    std::optional<CrossingCounts> counts;   // FF only
    std::optional<double> copula_diag;      // LOG / SEC: C_n(u,u)
    std::size_t sample_size = 0;
};

// Sample-quantile level for estimation. When heavy top-end ties pull the
// quantile up to the sample maximum there are no strict exceedances, so the
// level is stepped below the tied block (constant series: half the shared
// value); continuous data never triggers the adjustment. This keeps the
// degenerate-coherence guarantee (constant series -> FF = 1).
Level estimation_level(const UniformSeries& useries, double q);

// C_n(u,u): fraction of the L-1 adjacent pairs with both values <= u.
double empirical_copula_diag(const UniformSeries& useries, const Level& level);

// lambda_ff = 1 - U(u)/E(u); throws NoExceedances when E(u) = 0.
EstimateReport lambda_ff(const UniformSeries& useries, const Level& level);

// lambda_log = 2 - log C_n(u,u) / log u; throws DegenerateCopula when C_n = 0.
EstimateReport lambda_log(const UniformSeries& useries, const Level& level);

// lambda_sec = 2 - (1 - C_n(u,u)) / (1 - u); reported raw, may be negative.
EstimateReport lambda_sec(const UniformSeries& useries, const Level& level);

// Pipeline wrappers: empirical ranks, level at the q sample quantile.
EstimateReport lambda_ff(const TimeSeries& series, double q = 0.95);
EstimateReport lambda_log(const TimeSeries& series, double q = 0.95);
EstimateReport lambda_sec(const TimeSeries& series, double q = 0.95);

// Fraction of adjacent pairs with exactly equal raw values; estimates q (and
// hence S_{n,m}) for the short-failures stopped clock.
EstimateReport tie_rate(const TimeSeries& series);

// Dispatch by estimator kind over the empirical pipeline.
EstimateReport estimate(const TimeSeries& series, Estimator est, double q = 0.95);

}  // namespace tds
