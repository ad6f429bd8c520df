#pragma once

#include "maxapprox/linalg.hpp"

namespace maxapprox {

/// Covariance of a flat Dirichlet on the d-simplex: (d+1)x(d+1) with
/// diagonal d/((d+1)^2 (d+2)) and off-diagonal -1/((d+1)^2 (d+2)).
/// This is also the covariance of the d+1 spacings of d sorted uniforms,
/// so quadratic forms in it are cube averages of squared residuals.
Matrix dirichlet_covariance(int d);

struct L2Report {
    int d = 0;
    Matrix sigma;              // dirichlet_covariance(d)
    Matrix xi;                 // K(d)', the feature loadings per vertex
    Vector alpha_star;         // weighted least squares coefficients
    Rational alpha0_star;      // optimal intercept, mean residual target
    /// Mean squared error of the optimal full-R estimator under the
    /// uniform cube measure (the simplex volume factor divided out).
    Rational normalized_sq_error;
};

/// Least squares fit of the max over the sorted cone in simplex
/// coordinates: target A = (0,1,...,1), features Xi = K(d)', weight
/// dirichlet_covariance(d). The residual quadratic is exact and strictly
/// positive for every d >= 2.
L2Report l2_optimal(int d);

}  // namespace maxapprox
