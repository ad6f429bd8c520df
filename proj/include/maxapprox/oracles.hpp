#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "maxapprox/fitting.hpp"

namespace maxapprox {

/// Deterministic uniform generator; doubles are built from raw 64-bit
/// draws, so streams are reproducible across platforms, not just builds.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform rational k/denominator with k in {0,...,denominator}.
    Rational uniform_rational(unsigned long denominator = 64) {
        return rat(static_cast<long>(engine_() % (denominator + 1)),
                   static_cast<long>(denominator));
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Knobs for the sampling oracles; results are deterministic given the
/// seed.
struct OracleConfig {
    int grid_resolution = 51;  // >= 2
    long samples = 100'000;    // >= 1
    std::uint64_t seed = 1;
};

/// Exact sup-norm error of a symmetric estimator over the unit cube: the
/// error is affine in the simplex coordinates of the sorted point, so its
/// extrema sit at the d+1 cone vertices.
Rational vertex_error(const REstimator& est);

/// Max |est(x) - max(x)| over the uniform n-per-axis grid, binary floating
/// point. Refuses grids beyond 1e8 points.
double grid_error(const REstimator& est, int n);

struct RandomErrorReport {
    double max_error = 0.0;
    double fraction_at_least_eps = 0.0;
};

/// Max error over seeded uniform samples, plus the empirical fraction of
/// samples whose error is at least eps (the measure-bound check feeds on
/// it). Floating point.
RandomErrorReport random_error(const REstimator& est, long samples, std::uint64_t seed,
                               double eps = 2.0);

inline double grid_error(const REstimator& est, const OracleConfig& cfg) {
    return grid_error(est, cfg.grid_resolution);
}
inline RandomErrorReport random_error(const REstimator& est, const OracleConfig& cfg,
                                      double eps = 2.0) {
    return random_error(est, cfg.samples, cfg.seed, eps);
}

struct SliverClass {
    unsigned long k;          // 1-based lexicographic rank of the subset
    std::vector<int> subset;  // the r indices holding the top-r values
};

/// Literal sliver membership: x belongs to the sliver of subset c when the
/// top-r values of x, listed in decreasing value, sit at strictly
/// increasing indices and dominate the rest. Distinct coordinates only;
/// ties return nullopt, as does any x whose top-r indices are not
/// value-ordered.
std::optional<SliverClass> sliver_classify(const std::vector<double>& x, int r);

/// Fraction of random points classified to some sliver; converges to 1/r!
/// under the literal membership rule.
double sliver_coverage(int d, int r, long samples, std::uint64_t seed);

/// (ReLU(a-b) + ReLU(b-a) + a + b)/2, the two-input max identity.
Rational max2_closed(const Rational& a, const Rational& b);

/// Three-input max from pairwise absolute differences; the all-equal case
/// (zero denominator) returns the common value.
Rational max3_closed(const Rational& x1, const Rational& x2, const Rational& x3);

}  // namespace maxapprox
