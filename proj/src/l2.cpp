#include "maxapprox/l2.hpp"

#include <stdexcept>

#include "maxapprox/subpool.hpp"

namespace maxapprox {

Matrix dirichlet_covariance(int d) {
    if (d < 1) throw std::invalid_argument("dirichlet_covariance requires d >= 1");
    const auto n = static_cast<std::size_t>(d + 1);
    const Rational denom = rat(static_cast<long>(d + 1) * (d + 1) * (d + 2), 1);
    const Rational diag = rat(d, 1) / denom;
    const Rational off = rat(-1, 1) / denom;
    Matrix sigma(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sigma(i, j) = i == j ? diag : off;
    return sigma;
}

L2Report l2_optimal(int d) {
    if (d < 2) throw std::invalid_argument("l2_optimal requires d >= 2");
    L2Report report;
    report.d = d;
    report.sigma = dirichlet_covariance(d);
    report.xi = k_matrix(d).transposed();

    Vector a(static_cast<std::size_t>(d + 1), Rational(1));
    a[0] = 0;

    const PsdProjection proj = psd_project_residual(a, report.xi, report.sigma);
    report.alpha_star = proj.alpha;
    report.normalized_sq_error = proj.residual_quadratic;

    // First-order condition for the intercept: the mean residual under the
    // flat simplex measure, whose mean coordinate vector is 1/(d+1).
    const Vector resid = a - report.xi * report.alpha_star;
    Rational sum = 0;
    for (const Rational& r : resid) sum += r;
    report.alpha0_star = sum / (d + 1);
    return report;
}

}  // namespace maxapprox
