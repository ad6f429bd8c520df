#include "maxapprox/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maxapprox {

namespace {

struct EstimatorF64 {
    int d;
    double beta0;
    std::vector<double> weights;  // on descending order statistics

    explicit EstimatorF64(const REstimator& est) : d(est.d) {
        beta0 = est.has_intercept() ? to_double(est.beta0) : 0.0;
        for (const Rational& w : est.order_stat_weights()) weights.push_back(to_double(w));
    }

    // |est(x) - max(x)|; sorts in place.
    double abs_error(std::vector<double>& x) const {
        std::sort(x.begin(), x.end(), std::greater<double>());
        double value = beta0;
        for (int j = 0; j < d; ++j)
            value += weights[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        return std::abs(x[0] - value);
    }
};

}  // namespace

Rational vertex_error(const REstimator& est) {
    Rational worst = 0;
    for (const Rational& p : error_profile(est)) {
        const Rational a = abs(p);
        if (a > worst) worst = a;
    }
    return worst;
}

double grid_error(const REstimator& est, int n) {
    if (n < 2) throw std::invalid_argument("grid resolution must be >= 2");
    const int d = est.d;
    double budget = 1.0;
    for (int i = 0; i < d; ++i) budget *= n;
    if (budget > 1e8) throw std::invalid_argument("grid budget exceeded: n^d > 1e8");

    const EstimatorF64 fast(est);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    const double step = 1.0 / (n - 1);
    double worst = 0.0;
    for (;;) {
        for (int i = 0; i < d; ++i)
            x[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)] * step;
        worst = std::max(worst, fast.abs_error(x));
        int pos = d - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return worst;
}

RandomErrorReport random_error(const REstimator& est, long samples, std::uint64_t seed,
                               double eps) {
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
    const EstimatorF64 fast(est);
    DetRng rng(seed);
    std::vector<double> x(static_cast<std::size_t>(est.d));
    RandomErrorReport report;
    long hits = 0;
    for (long s = 0; s < samples; ++s) {
        for (auto& v : x) v = rng.uniform01();
        const double e = fast.abs_error(x);
        report.max_error = std::max(report.max_error, e);
        if (e >= eps) ++hits;
    }
    report.fraction_at_least_eps = static_cast<double>(hits) / static_cast<double>(samples);
    return report;
}

std::optional<SliverClass> sliver_classify(const std::vector<double>& x, int r) {
    const int d = static_cast<int>(x.size());
    if (r < 1 || r > d) throw std::invalid_argument("sliver order out of range");

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return x[static_cast<std::size_t>(a)] > x[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i + 1 < d; ++i)
        if (x[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] ==
            x[static_cast<std::size_t>(order[static_cast<std::size_t>(i + 1)])])
            return std::nullopt;

    // Membership needs the top-r indices, read in decreasing value, to be
    // strictly increasing.
    for (int i = 0; i + 1 < r; ++i)
        if (order[static_cast<std::size_t>(i)] >= order[static_cast<std::size_t>(i + 1)])
            return std::nullopt;

    SliverClass out;
    for (int i = 0; i < r; ++i) out.subset.push_back(order[static_cast<std::size_t>(i)] + 1);
    out.k = combination_rank(out.subset, d);
    return out;
}

double sliver_coverage(int d, int r, long samples, std::uint64_t seed) {
    if (r >= d) throw std::invalid_argument("sliver coverage requires r < d");
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
    DetRng rng(seed);
    std::vector<double> x(static_cast<std::size_t>(d));
    long hits = 0;
    for (long s = 0; s < samples; ++s) {
        for (auto& v : x) v = rng.uniform01();
        if (sliver_classify(x, r)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

Rational max2_closed(const Rational& a, const Rational& b) {
    const Rational d1 = a - b, d2 = b - a;
    Rational relu1 = sgn(d1) > 0 ? d1 : Rational(0);
    Rational relu2 = sgn(d2) > 0 ? d2 : Rational(0);
    return (relu1 + relu2 + a + b) / 2;
}

Rational max3_closed(const Rational& x1, const Rational& x2, const Rational& x3) {
    const Rational a12 = abs(x1 - x2), a13 = abs(x1 - x3), a23 = abs(x2 - x3);
    const Rational denom = a12 + a23 + a13;
    if (sgn(denom) == 0) return x1;  // all equal
    const Rational num = x1 * (a12 + a13) + x2 * (a12 + a23) + x3 * (a23 + a13);
    return num / (2 * denom) + denom / 4;
}

}  // namespace maxapprox
