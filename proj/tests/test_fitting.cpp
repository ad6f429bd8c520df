#include <doctest.h>

#include <random>

#include "maxapprox/fitting.hpp"
#include "maxapprox/verify.hpp"

using namespace maxapprox;

namespace {

std::set<int> full_set(int d) {
    std::set<int> orders;
    for (int r = 0; r < d; ++r) orders.insert(r);
    return orders;
}

}  // namespace

TEST_CASE("known optimal errors for small dimensions") {
    for (const auto& check : run_suite("table", {}))
        CHECK_MESSAGE(check.pass, check.name, ": expected ", check.expected, ", got ", check.got);
}

TEST_CASE("pinned fits: coefficients as well as errors") {
    const SolveReport rep = fit_optimal(3, {0, 2});
    CHECK(rep.err == rat(1, 6));
    CHECK(rep.estimator.beta0 == rat(1, 6));
    CHECK(rep.estimator.betas.at(2) == rat(1));
    CHECK(rep.profile == Vector{rat(-1, 6), rat(1, 6), rat(-1, 6), rat(-1, 6)});

    CHECK(fit_optimal(4, {2, 3}).err == rat(1, 13));
    CHECK(fit_optimal(3, {1, 2}).err == rat(1, 7));

    for (int d = 2; d <= 8; ++d) {
        const SolveReport r1 = fit_optimal(d, {0, d - 1});
        CHECK(r1.estimator.beta0 == rat(1, 2L * d));
        CHECK(r1.estimator.betas.at(d - 1) == rat(1));
    }
}

TEST_CASE("fit rejects malformed order sets") {
    CHECK_THROWS_AS(fit_optimal(3, {}), std::invalid_argument);
    CHECK_THROWS_AS(fit_optimal(3, {3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_optimal(3, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(fit_optimal(1, {0}), std::invalid_argument);
}

TEST_CASE("closed forms agree with the fitted values") {
    for (int d = 2; d <= 10; ++d) {
        const auto tail = closed_form_error(d, {d - 1});
        REQUIRE(tail);
        CHECK(!tail->upper_bound_only);
        CHECK(tail->value == rat(1, 2L * d - 1));
        CHECK(tail->value == fit_optimal(d, {d - 1}).err);

        const auto with_intercept = closed_form_error(d, {0, d - 1});
        REQUIRE(with_intercept);
        CHECK(with_intercept->value == rat(1, 2L * d));
        CHECK(with_intercept->value == fit_optimal(d, {0, d - 1}).err);
    }
    CHECK(closed_form_error(3, {2})->value == rat(1, 5));
    CHECK(closed_form_error(4, {0, 3})->value == rat(1, 8));
    const auto full = closed_form_error(4, full_set(4));
    REQUIRE(full);
    CHECK(full->value == rat(1, 16));
    CHECK(full->upper_bound_only);
    CHECK(!closed_form_error(4, {1, 2}));
}

TEST_CASE("full coefficient pattern hits 1/2^d") {
    const REstimator two = full_coefficients(2);
    CHECK(two.beta0 == rat(1, 4));
    CHECK(two.betas.at(1) == rat(1));

    const REstimator three = full_coefficients(3);
    CHECK(three.beta0 == rat(1, 8));
    CHECK(three.betas.at(1) == rat(-3, 4));
    CHECK(three.betas.at(2) == rat(3, 2));
    const Vector profile3 = error_profile(three);
    const auto [lo3, hi3] = std::pair{rat(-1, 8), rat(1, 8)};
    for (const Rational& p : profile3) CHECK((p == lo3 || p == hi3));

    for (int d = 2; d <= 12; ++d) {
        const Rational bound = pow_rational(rat(1, 2), static_cast<unsigned>(d));
        const REstimator est = full_coefficients(d);
        Rational worst = 0;
        for (const Rational& p : error_profile(est)) {
            const Rational a = abs(p);
            if (a > worst) worst = a;
        }
        CHECK(worst == bound);
        CHECK(fit_optimal(d, full_set(d)).err == bound);
    }
}

TEST_CASE("chebyshev centring") {
    CHECK(chebyshev_center({rat(3), rat(-1)}) == std::pair{rat(1), rat(2)});
    CHECK(chebyshev_center({rat(5, 7), rat(5, 7), rat(5, 7)}) == std::pair{rat(5, 7), rat(0)});
    CHECK(chebyshev_center({rat(0), rat(3, 4), rat(1), rat(3, 4)}) ==
          std::pair{rat(1, 2), rat(1, 2)});
    CHECK_THROWS_AS(chebyshev_center({}), std::invalid_argument);
}

TEST_CASE("error profiles at the cone vertices") {
    REstimator zero;
    zero.d = 2;
    zero.orders = {0, 1};
    zero.beta0 = 0;
    zero.betas[1] = 0;
    CHECK(error_profile(zero) == Vector{rat(0), rat(1), rat(1)});

    REstimator mid;
    mid.d = 3;
    mid.orders = {0, 2};
    mid.beta0 = rat(1, 6);
    mid.betas[2] = 1;
    CHECK(error_profile(mid) == Vector{rat(-1, 6), rat(1, 6), rat(-1, 6), rat(-1, 6)});
}

TEST_CASE("estimator evaluation through order statistics") {
    REstimator mid;
    mid.d = 3;
    mid.orders = {0, 2};
    mid.beta0 = rat(1, 6);
    mid.betas[2] = 1;
    CHECK(mid.evaluate({rat(1), rat(0), rat(0)}) == rat(5, 6));

    REstimator constant;
    constant.d = 4;
    constant.orders = {0};
    constant.beta0 = rat(2, 7);
    CHECK(constant.evaluate({rat(1), rat(0), rat(1, 3), rat(1, 2)}) == rat(2, 7));

    const REstimator two = full_coefficients(2);
    CHECK(two.evaluate({rat(1), rat(1)}) == rat(5, 4));

    CHECK_THROWS_AS(mid.evaluate({rat(1), rat(0)}), std::invalid_argument);
}

TEST_CASE("volume lower bound arithmetic and preconditions") {
    CHECK(measure_lower_bound(2, {0, 1}, rat(1, 16)) == rat(1, 256));
    CHECK(measure_lower_bound(3, {0, 2}, rat(1, 24)) == rat(1, 13824));
    CHECK_THROWS_AS(measure_lower_bound(2, {0, 1}, rat(1, 8)), std::invalid_argument);
    CHECK_THROWS_AS(measure_lower_bound(2, {1}, rat(1, 16)), std::invalid_argument);
}

TEST_CASE("bigger order sets never fit worse") {
    std::mt19937_64 rng(23);
    for (int d = 2; d <= 5; ++d)
        for (int trial = 0; trial < 10; ++trial) {
            std::set<int> small, big;
            for (int r = 0; r < d; ++r) {
                const bool in_small = rng() % 2 == 0;
                const bool in_big = in_small || rng() % 2 == 0;
                if (in_small) small.insert(r);
                if (in_big) big.insert(r);
            }
            if (small.empty()) small.insert(d - 1);
            big.insert(small.begin(), small.end());
            CHECK(fit_optimal(d, big).err <= fit_optimal(d, small).err);
        }
}

TEST_CASE("optimal estimators with an intercept are increasing") {
    for (int d = 2; d <= 5; ++d)
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            if (!(mask & 1u)) continue;  // want 0 in R
            std::set<int> orders;
            for (int r = 0; r < d; ++r)
                if (mask & (1u << r)) orders.insert(r);
            const SolveReport rep = fit_optimal(d, orders);
            // Loading on the simplex vertices, intercept excluded.
            const Matrix k = k_matrix(d);
            for (std::size_t c = 0; c <= static_cast<std::size_t>(d); ++c) {
                Rational loading = 0;
                for (const auto& [r, beta] : rep.estimator.betas)
                    loading += beta * k(static_cast<std::size_t>(r - 1), c);
                REQUIRE(sgn(loading) >= 0);
            }
        }
}

TEST_CASE("certificates re-verify and catch tampering") {
    for (int d = 2; d <= 5; ++d) {
        SolveReport rep = fit_optimal(d, {0, d - 1});
        CHECK(verify_certificate(rep));
        rep.err += rat(1, 1000);
        CHECK(!verify_certificate(rep));
    }
    SolveReport rep = fit_optimal(4, {1, 2});
    CHECK(verify_certificate(rep));
    rep.duals[0] += rat(1, 2);
    CHECK(!verify_certificate(rep));
}
