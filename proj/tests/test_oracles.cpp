#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "maxapprox/oracles.hpp"

using namespace maxapprox;

namespace {

REstimator optimal_01(int d) {  // the {0, d-1} optimum
    REstimator est;
    est.d = d;
    est.orders = {0, d - 1};
    est.beta0 = rat(1, 2L * d);
    est.betas[d - 1] = 1;
    return est;
}

}  // namespace

TEST_CASE("vertex errors of known estimators") {
    CHECK(vertex_error(optimal_01(3)) == rat(1, 6));
    CHECK(vertex_error(full_coefficients(4)) == rat(1, 16));
    REstimator zero;
    zero.d = 3;
    zero.orders = {0};
    zero.beta0 = 0;
    CHECK(vertex_error(zero) == rat(1));
}

TEST_CASE("grid error brackets the exact value from below") {
    const SolveReport two = fit_optimal(2, {0, 1});
    const double g2 = grid_error(two.estimator, 101);
    CHECK(g2 >= 0.24);
    CHECK(g2 <= 0.25 + 1e-12);

    const SolveReport three = fit_optimal(3, {0, 2});
    const double g3 = grid_error(three.estimator, 51);
    CHECK(g3 >= 0.16);
    CHECK(g3 <= to_double(rat(1, 6)) + 1e-12);
    CHECK(grid_error(three.estimator, OracleConfig{51, 1, 1}) == g3);

    for (const auto& rep : {two, three}) {
        const int n = rep.estimator.d == 2 ? 101 : 51;
        const double gap =
            to_double(rep.estimator.lipschitz_bound()) / (n - 1);
        CHECK(to_double(vertex_error(rep.estimator)) - grid_error(rep.estimator, n) <=
              gap + 1e-12);
    }

    CHECK_THROWS_WITH_AS(grid_error(optimal_01(5), 100), doctest::Contains("budget"),
                         std::invalid_argument);
}

TEST_CASE("random sampling stays below the certified error") {
    const SolveReport rep = fit_optimal(2, {0, 1});
    const RandomErrorReport a = random_error(rep.estimator, 100'000, 4242);
    CHECK(a.max_error <= 0.25 + 1e-12);
    CHECK(a.max_error >= 0.2);
    const RandomErrorReport b = random_error(rep.estimator, 100'000, 4242);
    CHECK(a.max_error == b.max_error);  // same seed, same stream

    const RandomErrorReport single = random_error(rep.estimator, 1, 7);
    CHECK(single.max_error >= 0.0);
    CHECK(single.fraction_at_least_eps == 0.0);
}

TEST_CASE("sliver membership under the literal ordering rule") {
    const auto a = sliver_classify({0.9, 0.5, 0.1}, 2);
    REQUIRE(a);
    CHECK(a->k == 1);
    CHECK(a->subset == std::vector<int>{1, 2});

    CHECK(!sliver_classify({0.5, 0.9, 0.1}, 2));

    const auto c = sliver_classify({0.1, 0.9, 0.5}, 2);
    REQUIRE(c);
    CHECK(c->subset == std::vector<int>{2, 3});
    CHECK(c->k == 3);

    CHECK(!sliver_classify({0.5, 0.5, 0.1}, 2));  // tie

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 3 + static_cast<int>(rng() % 4);
        const int r = 1 + static_cast<int>(rng() % (d - 1));
        std::vector<double> x(static_cast<std::size_t>(d));
        for (auto& v : x) v = unif(rng);
        const auto hit = sliver_classify(x, r);
        if (!hit) continue;
        // The classified subset must hold exactly the r largest values.
        std::vector<double> sorted = x;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        for (int i : hit->subset) REQUIRE(x[static_cast<std::size_t>(i - 1)] >= sorted[r - 1]);
    }
}

TEST_CASE("sliver coverage concentrates near 1/r!") {
    const long n = 100'000;
    const double c2 = sliver_coverage(4, 2, n, 101);
    CHECK(std::abs(c2 - 0.5) <= 3 * std::sqrt(0.25 / n));
    const double c1 = sliver_coverage(5, 1, n, 103);
    CHECK(c1 == 1.0);
    const double c3 = sliver_coverage(5, 3, n, 107);
    const double p3 = 1.0 / 6.0;
    CHECK(std::abs(c3 - p3) <= 3 * std::sqrt(p3 * (1 - p3) / n));
    CHECK_THROWS_AS(sliver_coverage(4, 4, 10, 1), std::invalid_argument);
}

TEST_CASE("closed-form maxes stay exact") {
    CHECK(max2_closed(rat(3), rat(5)) == rat(5));
    CHECK(max2_closed(rat(-2), rat(-2)) == rat(-2));
    CHECK(max2_closed(rat(7, 5), rat(-7, 5)) == rat(7, 5));

    CHECK(max3_closed(rat(0), rat(0), rat(1)) == rat(1));
    CHECK(max3_closed(rat(5, 7), rat(5, 7), rat(5, 7)) == rat(5, 7));
    CHECK(max3_closed(rat(1), rat(2), rat(3)) == rat(3));

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational a = rat(static_cast<long>(rng() % 97) - 48, 12);
        const Rational b = trial % 5 == 0 ? a : rat(static_cast<long>(rng() % 97) - 48, 12);
        const Rational c = trial % 7 == 0 ? b : rat(static_cast<long>(rng() % 97) - 48, 12);
        Rational m = a > b ? a : b;
        if (c > m) m = c;
        REQUIRE(max2_closed(a, b) == (a > b ? a : b));
        REQUIRE(max3_closed(a, b, c) == m);
    }
}
