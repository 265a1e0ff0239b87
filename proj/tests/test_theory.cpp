#include <doctest.h>

#include <cmath>
#include <random>

#include "tds/theory.hpp"

using namespace tds;

namespace {

// random column-stochastic weights (columns are probability vectors)
SpectralWeights random_weights(std::mt19937& rng, std::size_t factors, std::size_t cols) {
    std::uniform_real_distribution<double> unif(0.01, 1.0);
    std::vector<std::vector<double>> b(factors, std::vector<double>(cols));
    for (std::size_t n = 0; n < cols; ++n) {
        double sum = 0.0;
        for (std::size_t s = 0; s < factors; ++s) {
            b[s][n] = unif(rng);
            sum += b[s][n];
        }
        for (std::size_t s = 0; s < factors; ++s) b[s][n] /= sum;
    }
    return SpectralWeights::from_normalized(std::move(b));
}

// exact joint d.f. diagonal for a column pair, used as the oracle input
std::function<double(double)> joint_tail_for(const SpectralWeights& w, long i, long j) {
    return [&w, i, j](double u) {
        double sum_max = 0.0;
        for (const auto& row : w.b) {
            sum_max += std::max(row[static_cast<std::size_t>(i - 1)],
                                row[static_cast<std::size_t>(j - 1)]);
        }
        return std::pow(u, sum_max);
    };
}

}  // namespace

TEST_CASE("smoothness_from_pairwise arithmetic") {
    const PairwiseLambda half = [](long, long) { return 0.5; };
    CHECK(smoothness_from_pairwise(half, 1, 10).s == doctest::Approx(0.5).epsilon(1e-15));

    const PairwiseLambda table = [](long i, long j) -> std::optional<double> {
        if (i == 1 && j == 0) return 0.1;
        if (i == 1 && j == 2) return 0.2;
        if (i == 2 && j == 1) return 0.2;
        if (i == 2 && j == 3) return 0.3;
        return std::nullopt;
    };
    CHECK(smoothness_from_pairwise(table, 1, 2).s == doctest::Approx(0.2).epsilon(1e-15));

    const PairwiseLambda zero = [](long, long) { return 0.0; };
    const PairwiseLambda one = [](long, long) { return 1.0; };
    CHECK(smoothness_from_pairwise(zero, 3, 7).s == 0.0);
    CHECK(smoothness_from_pairwise(one, 3, 7).s == 1.0);

    CHECK_THROWS_AS(smoothness_from_pairwise(table, 1, 3), MissingPair);
    const PairwiseLambda bad = [](long, long) { return 1.5; };
    CHECK_THROWS_AS(smoothness_from_pairwise(bad, 1, 2), InvalidLambda);
    CHECK_THROWS_AS(smoothness_from_pairwise(half, 2, 2), InvalidParameter);
}

TEST_CASE("rfactor_pairwise_lambda") {
    const auto w = SpectralWeights::from_normalized({{0.3, 0.6}, {0.7, 0.4}});
    CHECK(rfactor_pairwise_lambda(w, 1, 2) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(rfactor_pairwise_lambda(w, 2, 1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(rfactor_pairwise_lambda(w, 1, 1) == doctest::Approx(1.0));

    const auto disjoint = SpectralWeights::from_normalized({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(rfactor_pairwise_lambda(disjoint, 1, 2) == 0.0);
    CHECK_THROWS_AS(rfactor_pairwise_lambda(w, 1, 3), IndexError);
}

TEST_CASE("rfactor_smoothness special cases") {
    SUBCASE("constant columns give S=1") {
        const auto w = SpectralWeights::from_raw({{2.0, 2.0, 2.0, 2.0}, {1.0, 1.0, 1.0, 1.0}}, 1.3);
        CHECK(rfactor_smoothness(w, 2, 3).s == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("equally weighted factors give S=1") {
        // a_{s,n} = a_n for all s: columns are (1/r, ..., 1/r)
        const auto w = SpectralWeights::from_raw(
            {{0.5, 2.0, 1.0, 3.0}, {0.5, 2.0, 1.0, 3.0}, {0.5, 2.0, 1.0, 3.0}}, 2.0);
        CHECK(rfactor_smoothness(w, 2, 3).s == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("alternating disjoint supports give S=0") {
        const auto w = SpectralWeights::from_normalized(
            {{1.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 1.0}});
        CHECK(rfactor_smoothness(w, 2, 3).s == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("missing boundary columns") {
        const auto w = SpectralWeights::from_normalized({{1.0, 1.0}});
        CHECK_THROWS_AS(rfactor_smoothness(w, 1, 2), IndexError);
    }
}

TEST_CASE("rfactor closed form matches pairwise composition") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> nfac(1, 5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto w = random_weights(rng, nfac(rng), 8);
        const PairwiseLambda provider = [&](long i, long j) -> std::optional<double> {
            return rfactor_pairwise_lambda(w, i, j);
        };
        const auto direct = rfactor_smoothness(w, 2, 7);
        const auto composed = smoothness_from_pairwise(provider, 2, 7);
        CHECK(direct.s == doctest::Approx(composed.s).epsilon(1e-12));
        CHECK(direct.s >= 0.0);
        CHECK(direct.s <= 1.0);
    }
}

TEST_CASE("stopped clock pairwise lambda") {
    CHECK(stopped_clock_pairwise_lambda(0.0) == 0.0);
    CHECK(stopped_clock_pairwise_lambda(0.3) == 0.3);
    CHECK_THROWS_AS(stopped_clock_pairwise_lambda(0.5), InvalidParameter);
    // constant q: S over any block equals q
    const PairwiseLambda provider = [](long, long) { return stopped_clock_pairwise_lambda(0.3); };
    CHECK(smoothness_from_pairwise(provider, 4, 9).s == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("numeric_lambda_limit") {
    SUBCASE("independence and total dependence") {
        const auto indep = numeric_lambda_limit([](double u) { return u * u; });
        CHECK(indep.value == doctest::Approx(0.0).epsilon(1e-6));
        const auto total = numeric_lambda_limit([](double u) { return u; });
        CHECK(total.value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(total.spread < 1e-9);
    }
    SUBCASE("power diagonal matches the closed form") {
        const auto lim = numeric_lambda_limit([](double u) { return std::pow(u, 1.3); });
        CHECK(lim.value == doctest::Approx(0.7).epsilon(1e-6));
    }
    SUBCASE("diverging input is rejected") {
        CHECK_THROWS_AS(numeric_lambda_limit([](double u) { return 2.0 * u - 1.0 + (1.0 - u) / (1e-9 + std::pow(1.0 - u, 0.5)); }),
                        NoLimit);
    }
}

TEST_CASE("oracle agreement on random column pairs") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> nfac(2, 6);
    for (int rep = 0; rep < 50; ++rep) {
        const auto w = random_weights(rng, nfac(rng), 2);
        const double closed = rfactor_pairwise_lambda(w, 1, 2);
        const auto limit = numeric_lambda_limit(joint_tail_for(w, 1, 2));
        CHECK(std::abs(closed - limit.value) < 1e-3);
    }
}

TEST_CASE("concordance monotonicity: moving a column toward coincidence") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const auto w = random_weights(rng, 4, 2);
        double prev = rfactor_pairwise_lambda(w, 1, 2);
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
            auto mixed = w.b;
            for (std::size_t s = 0; s < mixed.size(); ++s) {
                mixed[s][1] = (1.0 - t) * w.b[s][1] + t * w.b[s][0];
            }
            const double lam =
                rfactor_pairwise_lambda(SpectralWeights::from_normalized(mixed), 1, 2);
            CHECK(lam >= prev - 1e-12);
            prev = lam;
        }
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));  // coincident columns maximize
    }
}
