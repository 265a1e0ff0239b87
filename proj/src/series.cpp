#include "tds/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tds {

TimeSeries TimeSeries::create(std::vector<double> values, long start_index,
                              std::string model_tag, std::optional<double> true_lambda) {
    if (values.size() < 2) {
        throw InvalidSeries("series must hold at least 2 observations, got " +
                            std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidSeries("series values must be finite");
        }
    }
    TimeSeries s;
    s.values = std::move(values);
    s.start_index = start_index;
    s.model_tag = std::move(model_tag);
    s.true_lambda = true_lambda;
    return s;
}

Level Level::fixed(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidParameter("level u must lie in (0,1), got " + std::to_string(u));
    }
    return Level{u, LevelOrigin::Fixed, std::nullopt};
}

UniformSeries uniformize_empirical(const TimeSeries& series) {
    if (series.size() < 2) {
        throw InvalidSeries("series must hold at least 2 observations");
    }
    const std::size_t n = series.size();
    std::vector<double> sorted(series.values);
    std::sort(sorted.begin(), sorted.end());

    UniformSeries out;
    out.source = UniformSource::EmpiricalRanks;
    out.values.reserve(n);
    const double denom = static_cast<double>(n) + 1.0;
    for (double v : series.values) {
        // max rank: tied positions all receive the rank of the last tie
        const auto rank = std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
        out.values.push_back(static_cast<double>(rank) / denom);
    }
    return out;
}

UniformSeries uniformize_theoretical(const TimeSeries& series, const IndexedCdf& cdf) {
    if (series.size() < 2) {
        throw InvalidSeries("series must hold at least 2 observations");
    }
    const double eps = std::numeric_limits<double>::epsilon();
    UniformSeries out;
    out.source = UniformSource::TheoreticalCdf;
    out.values.reserve(series.size());
    long idx = series.start_index;
    for (double x : series.values) {
        double u = cdf(idx, x);
        if (!(u >= 0.0 && u <= 1.0)) {
            throw InvalidCdf("cdf returned " + std::to_string(u) + " at index " +
                             std::to_string(idx));
        }
        out.values.push_back(std::clamp(u, eps, 1.0 - eps));
        ++idx;
    }
    return out;
}

CrossingCounts count_crossings(const UniformSeries& useries, const Level& level) {
    if (useries.size() < 2) {
        throw InvalidSeries("uniform series must hold at least 2 values");
    }
    if (!(level.u > 0.0 && level.u < 1.0)) {
        throw InvalidParameter("level u must lie in (0,1)");
    }
    CrossingCounts counts;
    counts.level = level;
    counts.series_length = useries.size();
    const double u = level.u;
    const auto& v = useries.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > u) ++counts.exceedances;
        if (i + 1 < v.size() && v[i] <= u && v[i + 1] > u) ++counts.upcrossings;
    }
    return counts;
}

Level sample_quantile_level(const UniformSeries& useries, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw InvalidQuantile("quantile must lie in (0,1), got " + std::to_string(q));
    }
    if (useries.size() < 2) {
        throw InvalidSeries("uniform series must hold at least 2 values");
    }
    std::vector<double> sorted(useries.values);
    std::sort(sorted.begin(), sorted.end());
    const double target = q * static_cast<double>(sorted.size());
    // tolerance keeps e.g. 0.95*1000 from rounding up to 951
    auto k = static_cast<std::size_t>(std::ceil(target - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sorted.size());
    Level level;
    level.u = sorted[k - 1];
    level.origin = LevelOrigin::SampleQuantile;
    level.quantile = q;
    return level;
}

}  // namespace tds
