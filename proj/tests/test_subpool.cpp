#include <doctest.h>

#include <random>
#include <set>

#include "maxapprox/subpool.hpp"

using namespace maxapprox;

namespace {

// Test-local enumeration over bitmasks, independent of the library's
// subset walk and of the order-statistics identity.
Rational bitmask_avg_max(const Vector& x, int r) {
    const int d = static_cast<int>(x.size());
    Rational sum = 0;
    long count = 0;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        Rational best;
        bool first = true;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) {
                if (first || x[static_cast<std::size_t>(i)] > best)
                    best = x[static_cast<std::size_t>(i)];
                first = false;
            }
        sum += best;
        ++count;
    }
    return sum / count;
}

Vector random_pool(std::mt19937_64& rng, int d) {
    Vector x(static_cast<std::size_t>(d));
    for (auto& v : x) v = rat(static_cast<long>(rng() % 65), 64);
    return x;
}

}  // namespace

TEST_CASE("subset unranking walks the lexicographic order") {
    CHECK(combination_unrank({1, 2, 3}) == std::vector<int>{1, 2});
    CHECK(combination_unrank({2, 2, 3}) == std::vector<int>{1, 3});
    CHECK(combination_unrank({3, 2, 3}) == std::vector<int>{2, 3});
    CHECK(combination_unrank({1, 5, 5}) == std::vector<int>{1, 2, 3, 4, 5});
    CHECK_THROWS_AS(combination_unrank({4, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(combination_unrank({0, 2, 3}), std::invalid_argument);
}

TEST_CASE("unranking is a bijection onto sorted subsets") {
    for (int d = 1; d <= 8; ++d)
        for (int r = 1; r <= d; ++r) {
            const Integer total = binomial(d, r);
            std::set<std::vector<int>> seen;
            std::vector<int> prev;
            for (unsigned long j = 1; cmp(total, j) >= 0; ++j) {
                const auto subset = combination_unrank({j, r, d});
                REQUIRE(static_cast<int>(subset.size()) == r);
                REQUIRE(std::is_sorted(subset.begin(), subset.end()));
                if (!prev.empty()) REQUIRE(prev < subset);
                REQUIRE(combination_rank(subset, d) == j);
                seen.insert(subset);
                prev = subset;
            }
            CHECK(cmp(total, seen.size()) == 0);
        }
}

TEST_CASE("subpool max picks the right component") {
    const Vector x{rat(3), rat(2), rat(10), rat(5)};
    CHECK(subpool_max(x, {1, 2, 4}) == rat(5));
    CHECK(subpool_max(x, {1, 2, 3, 4}) == rat(10));
    const Vector constant{rat(7, 3), rat(7, 3), rat(7, 3)};
    CHECK(subpool_max(constant, {2, 3}) == rat(7, 3));
    CHECK_THROWS_AS(subpool_max(x, {}), std::invalid_argument);
    CHECK_THROWS_AS(subpool_max(x, {5}), std::invalid_argument);
}

TEST_CASE("averaged subpool maxes: direct enumeration") {
    const Vector x{rat(3), rat(2), rat(10), rat(5)};
    CHECK(bitmask_avg_max(x, 3) == rat(35, 4));
    CHECK(avg_subpool_max_direct(x, 3) == rat(35, 4));
    CHECK(avg_subpool_max_direct(x, 1) == rat(5));  // plain mean
    CHECK(avg_subpool_max_direct(x, 4) == rat(10));
    CHECK_THROWS_AS(avg_subpool_max_direct(x, 0), std::invalid_argument);
    CHECK_THROWS_AS(avg_subpool_max_direct(x, 5), std::invalid_argument);
}

TEST_CASE("enumeration refuses oversized subset counts") {
    const Vector x(40, rat(1));
    CHECK_THROWS_WITH_AS(avg_subpool_max_direct(x, 20),
                         doctest::Contains("too large"), std::invalid_argument);
}

TEST_CASE("order-statistics identity matches enumeration everywhere") {
    std::mt19937_64 rng(5);
    for (int d = 2; d <= 8; ++d)
        for (int trial = 0; trial < 1000; ++trial) {
            const Vector x = random_pool(rng, d);
            for (int r = 1; r <= d; ++r)
                REQUIRE(avg_subpool_max_orderstat(x, r) == avg_subpool_max_direct(x, r));
        }
}

TEST_CASE("order-statistics closed forms at the boundary orders") {
    std::mt19937_64 rng(9);
    for (int d = 2; d <= 8; ++d) {
        const Vector x = random_pool(rng, d);
        const Vector sorted = sorted_descending(x);
        CHECK(avg_subpool_max_orderstat(x, d - 1) ==
              (rat(d - 1) * sorted[0] + sorted[1]) / rat(d));
        Vector spike(static_cast<std::size_t>(d), rat(0));
        spike[0] = 1;
        CHECK(avg_subpool_max_orderstat(spike, d - 1) == rat(d - 1, d));
    }
}

TEST_CASE("order-statistics weights normalize") {
    for (int d = 1; d <= 40; ++d)
        for (int r = 1; r <= d; ++r) {
            Integer sum = 0;
            for (int j = 1; j <= d - r + 1; ++j) sum += binomial(d - j, r - 1);
            CHECK(sum == binomial(d, r));
        }
}

TEST_CASE("larger subpools dominate") {
    std::mt19937_64 rng(13);
    for (int d = 2; d <= 7; ++d)
        for (int trial = 0; trial < 50; ++trial) {
            const Vector x = random_pool(rng, d);
            const Rational top = sorted_descending(x)[0];
            Rational prev = avg_subpool_max_orderstat(x, 1);
            for (int r = 2; r <= d; ++r) {
                const Rational cur = avg_subpool_max_orderstat(x, r);
                REQUIRE(prev <= cur);
                REQUIRE(cur <= top);
                prev = cur;
            }
        }
}

TEST_CASE("loading matrices match their closed forms") {
    CHECK(b_matrix(2) == Matrix{{rat(1, 2), rat(1, 2)}});
    CHECK(b_matrix(3) ==
          Matrix{{rat(1, 3), rat(1, 3), rat(1, 3)}, {rat(2, 3), rat(1, 3), rat(0)}});
    for (int d = 2; d <= 12; ++d) {
        const Matrix b = b_matrix(d);
        for (std::size_t r = 0; r < b.rows(); ++r) {
            Rational sum = 0;
            for (std::size_t c = 0; c < b.cols(); ++c) sum += b(r, c);
            CHECK(sum == rat(1));
        }
    }
    CHECK_THROWS_AS(b_matrix(1), std::invalid_argument);

    CHECK(v_matrix(2) == Matrix{{rat(0), rat(1), rat(1)}, {rat(0), rat(0), rat(1)}});
    for (int d = 1; d <= 10; ++d) {
        const Matrix v = v_matrix(d);
        for (std::size_t i = 0; i < v.rows(); ++i) {
            CHECK(v(i, 0) == 0);
            CHECK(v(i, v.cols() - 1) == 1);
        }
    }

    CHECK(k_matrix(2) == Matrix{{rat(0), rat(1, 2), rat(1)}});
    const Matrix k3 = k_matrix(3);
    CHECK(k3(0, 0) == rat(0));
    CHECK(k3(0, 1) == rat(1, 3));
    CHECK(k3(0, 2) == rat(2, 3));
    CHECK(k3(0, 3) == rat(1));
    for (int d = 2; d <= 12; ++d) {
        const Matrix k = k_matrix(d);
        for (std::size_t r = 0; r < k.rows(); ++r) CHECK(k(r, 0) == 0);
    }
}

TEST_CASE("vertex coordinates reproduce the averaged maxes") {
    std::mt19937_64 rng(17);
    for (int d = 2; d <= 8; ++d)
        for (int trial = 0; trial < 30; ++trial) {
            const Vector sorted = sorted_descending(random_pool(rng, d));
            Vector lambda(static_cast<std::size_t>(d + 1));
            lambda[0] = rat(1) - sorted[0];
            for (int i = 1; i < d; ++i)
                lambda[static_cast<std::size_t>(i)] =
                    sorted[static_cast<std::size_t>(i - 1)] - sorted[static_cast<std::size_t>(i)];
            lambda[static_cast<std::size_t>(d)] = sorted[static_cast<std::size_t>(d - 1)];

            const Vector through_k = k_matrix(d) * lambda;
            for (int r = 1; r <= d - 1; ++r)
                REQUIRE(through_k[static_cast<std::size_t>(r - 1)] ==
                        avg_subpool_max_orderstat(sorted, r));
        }
}
