#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "maxapprox/simplex.hpp"
#include "maxapprox/subpool.hpp"

namespace maxapprox {

/// Thrown when a claimed coefficient pattern fails its vertex-profile
/// verification; carries the profile that was actually achieved.
struct CoefficientVerificationError : std::logic_error {
    CoefficientVerificationError(const std::string& what, Vector achieved_profile)
        : std::logic_error(what), profile(std::move(achieved_profile)) {}
    Vector profile;
};

/// Symmetric affine combination of averaged subpool maxes:
/// x -> beta0 + sum_{r in R\{0}} beta_r S(x; r, d). One coefficient per
/// order, never per subset; beta0 participates only when 0 is in R.
struct REstimator {
    int d = 0;
    std::set<int> orders;            // R, subset of {0, ..., d-1}
    Rational beta0;                  // meaningful iff has_intercept()
    std::map<int, Rational> betas;   // r -> beta_r for r in R \ {0}

    bool has_intercept() const { return orders.count(0) > 0; }

    /// Exact evaluation through the order-statistics path.
    Rational evaluate(const Vector& x) const;
    /// Binary floating point evaluation for sampling oracles.
    double evaluate_f64(const std::vector<double>& x) const;

    /// Loadings on the descending order statistics, sum_r beta_r B(d)[r,:].
    Vector order_stat_weights() const;
    /// 1 + sum_r |beta_r|, a sup-norm Lipschitz bound for max(x) - est(x).
    Rational lipschitz_bound() const;
};

struct SolveReport {
    REstimator estimator;
    Rational err;
    /// Error max(p) - est(p) at the d+1 cone vertices, ordered by the
    /// number of leading ones: origin first, all-ones point last.
    Vector profile;
    /// Terminal multipliers of the fitting program; re-checked by
    /// verify_certificate.
    Vector duals;
};

/// Exact minimax fit of the target max over the d+1 vertex points with
/// features S(p; r, d) for r in R\{0} and an intercept column iff 0 in R.
/// The vertex program's value is the estimator's sup-norm error over the
/// whole cube. When an intercept is present the fit is solved both with a
/// free intercept and through the spread-minimizing form recentred by
/// chebyshev_center; the two values are asserted equal.
SolveReport fit_optimal(int d, const std::set<int>& orders);

/// Re-verifies a report's optimality certificate from scratch.
bool verify_certificate(const SolveReport& report);

struct ClosedFormError {
    Rational value;
    bool upper_bound_only;  // true for the full set {0..d-1}
};

/// 1/(2d-1) for R = {d-1}, 1/(2d) for R = {0, d-1}, and the bound 1/2^d
/// for R = {0,...,d-1} (flagged as an upper bound). Other R: nullopt.
std::optional<ClosedFormError> closed_form_error(int d, const std::set<int>& orders);

/// The full-R estimator with beta0 = 1/2^d and
/// beta_r = -(-1/2)^(d-r) C(d,r); its vertex profile is verified to reach
/// max-abs error exactly 1/2^d before returning, and a failure throws with
/// the offending profile attached.
REstimator full_coefficients(int d);

/// Midpoint and half-spread of a value set: the unique offset minimizing
/// the worst absolute deviation, and that deviation.
std::pair<Rational, Rational> chebyshev_center(const Vector& gamma);

/// (0,1,...,1) - beta0 * 1 - beta' B_R(d) V(d): the estimator's error at
/// the d+1 cone vertices (origin first).
Vector error_profile(const REstimator& est);

/// (err(R)/2 - eps)^d, the guaranteed cube volume on which the optimal
/// R-estimator errs by at least eps. Requires 0 in R and eps < err(R)/2.
Rational measure_lower_bound(int d, const std::set<int>& orders, const Rational& eps);

struct TableRow {
    int d;
    std::set<int> orders;
    Rational err;
};

/// Optimal errors for every nonempty R subset of {0..d-1}, d = 2..d_max,
/// ordered by d, then subset size, then lexicographically.
std::vector<TableRow> enumerate_table(int d_max);

}  // namespace maxapprox
