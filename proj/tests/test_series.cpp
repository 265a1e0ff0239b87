#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tds/series.hpp"

using namespace tds;

namespace {

UniformSeries make_uniform(std::vector<double> v) {
    UniformSeries u;
    u.values = std::move(v);
    u.source = UniformSource::EmpiricalRanks;
    return u;
}

// naive reference counter, kept independent of count_crossings
std::pair<std::size_t, std::size_t> naive_counts(const std::vector<double>& v, double u) {
    std::size_t up = 0, ex = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > u) ++ex;
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i - 1] <= u && v[i] > u) ++up;
    }
    return {up, ex};
}

}  // namespace

TEST_CASE("TimeSeries validation") {
    CHECK_THROWS_AS(TimeSeries::create({1.0}), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries::create({1.0, std::nan("")}), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries::create({1.0, INFINITY}), InvalidSeries);
    const auto s = TimeSeries::create({1.0, 2.0}, 3);
    CHECK(s.start_index == 3);
}

TEST_CASE("uniformize_empirical ranks") {
    auto u = uniformize_empirical(TimeSeries::create({10, 30, 20}));
    CHECK(u.values == std::vector<double>{1.0 / 4, 3.0 / 4, 2.0 / 4});

    u = uniformize_empirical(TimeSeries::create({5, 5, 5}));
    CHECK(u.values == std::vector<double>{3.0 / 4, 3.0 / 4, 3.0 / 4});

    u = uniformize_empirical(TimeSeries::create({2, 7, 7, 1}));
    CHECK(u.values == std::vector<double>{2.0 / 5, 4.0 / 5, 4.0 / 5, 1.0 / 5});
}

TEST_CASE("uniformize_theoretical") {
    const IndexedCdf frechet = [](long, double x) { return std::exp(-1.0 / x); };
    auto u = uniformize_theoretical(TimeSeries::create({1.0 / std::log(2.0), 1.0}), frechet);
    CHECK(u.values[0] == doctest::Approx(0.5).epsilon(1e-12));

    const IndexedCdf pareto3 = [](long, double x) { return 1.0 - 1.0 / (1.0 + x); };
    u = uniformize_theoretical(TimeSeries::create({1.0, 1.0}), pareto3);
    CHECK(u.values[0] == doctest::Approx(0.5).epsilon(1e-12));
    // constant series stays constant
    CHECK(u.values[0] == u.values[1]);

    const IndexedCdf bad = [](long, double) { return 1.5; };
    CHECK_THROWS_AS(uniformize_theoretical(TimeSeries::create({1.0, 2.0}), bad), InvalidCdf);

    // clamp keeps values strictly inside (0,1)
    const IndexedCdf extreme = [](long, double x) { return x > 0 ? 1.0 : 0.0; };
    u = uniformize_theoretical(TimeSeries::create({1.0, -1.0}), extreme);
    CHECK(u.values[0] < 1.0);
    CHECK(u.values[1] > 0.0);
}

TEST_CASE("count_crossings hand counts") {
    const auto u = make_uniform({0.1, 0.96, 0.97, 0.2, 0.99});
    const auto counts = count_crossings(u, Level::fixed(0.95));
    CHECK(counts.upcrossings == 2);
    CHECK(counts.exceedances == 3);
    CHECK(counts.series_length == 5);

    const auto low = count_crossings(make_uniform({0.1, 0.2, 0.3}), Level::fixed(0.95));
    CHECK(low.upcrossings == 0);
    CHECK(low.exceedances == 0);

    const auto high = count_crossings(make_uniform({0.96, 0.97, 0.99}), Level::fixed(0.95));
    CHECK(high.upcrossings == 0);
    CHECK(high.exceedances == 3);
}

TEST_CASE("sample_quantile_level conventions") {
    std::vector<double> grid;
    for (int r = 1; r <= 100; ++r) grid.push_back(r / 101.0);
    std::mt19937 rng(1);
    std::shuffle(grid.begin(), grid.end(), rng);
    const auto level = sample_quantile_level(make_uniform(grid), 0.95);
    CHECK(level.u == doctest::Approx(95.0 / 101.0).epsilon(1e-12));
    CHECK(level.origin == LevelOrigin::SampleQuantile);
    CHECK(level.quantile == 0.95);

    CHECK(sample_quantile_level(make_uniform({0.25, 0.5, 0.75}), 0.5).u == 0.5);
    CHECK(sample_quantile_level(make_uniform({0.3, 0.3, 0.3}), 0.7).u == 0.3);
    CHECK_THROWS_AS(sample_quantile_level(make_uniform({0.1, 0.2}), 1.0), InvalidQuantile);
    CHECK_THROWS_AS(sample_quantile_level(make_uniform({0.1, 0.2}), 0.0), InvalidQuantile);
}

TEST_CASE("rank invariance under strictly increasing maps") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(40);
        for (auto& v : x) v = unif(rng);
        const auto base = uniformize_empirical(TimeSeries::create(x));
        std::vector<double> mapped(x.size());
        std::transform(x.begin(), x.end(), mapped.begin(),
                       [](double v) { return std::exp(v) + v * v * v; });
        const auto transformed = uniformize_empirical(TimeSeries::create(mapped));
        CHECK(base.values == transformed.values);
    }
}

TEST_CASE("tie coherence: equal raw values never create upcrossings") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> small(0, 4);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> x(30);
        for (auto& v : x) v = small(rng);  // heavy ties
        const auto u = uniformize_empirical(TimeSeries::create(x));
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            if (x[i] == x[i + 1]) CHECK(u.values[i] == u.values[i + 1]);
        }
    }
}

TEST_CASE("crossing bound and naive-loop oracle on random series") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> len(2, 80);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = 0.001 + 0.998 * unif(rng);
        const double u = 0.001 + 0.998 * unif(rng);
        const auto counts = count_crossings(make_uniform(v), Level::fixed(u));
        const auto [up, ex] = naive_counts(v, u);
        CHECK(counts.upcrossings == up);
        CHECK(counts.exceedances == ex);
        CHECK(counts.upcrossings <= counts.exceedances);
    }
}
