#include "maxapprox/fitting.hpp"

#include <algorithm>

namespace maxapprox {

namespace {

void check_orders(int d, const std::set<int>& orders) {
    if (d < 2) throw std::invalid_argument("estimators require d >= 2");
    if (orders.empty()) throw std::invalid_argument("order set R must be nonempty");
    if (*orders.begin() < 0 || *orders.rbegin() >= d)
        throw std::invalid_argument("order set R must be a subset of {0,...,d-1}");
}

Vector vertex_targets(int d) {
    Vector t(static_cast<std::size_t>(d + 1), Rational(1));
    t[0] = 0;
    return t;
}

}  // namespace

Rational REstimator::evaluate(const Vector& x) const {
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("estimator input length mismatch");
    Rational out = has_intercept() ? beta0 : Rational(0);
    for (const auto& [r, beta] : betas) out += beta * avg_subpool_max_orderstat(x, r);
    return out;
}

double REstimator::evaluate_f64(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("estimator input length mismatch");
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    const Vector w = order_stat_weights();
    double out = has_intercept() ? to_double(beta0) : 0.0;
    for (int j = 0; j < d; ++j)
        out += to_double(w[static_cast<std::size_t>(j)]) * sorted[static_cast<std::size_t>(j)];
    return out;
}

Vector REstimator::order_stat_weights() const {
    Vector w(static_cast<std::size_t>(d), Rational(0));
    for (const auto& [r, beta] : betas) {
        const Rational denom = rat(binomial(d, r), 1);
        for (int j = 1; j <= d - r + 1; ++j)
            w[static_cast<std::size_t>(j - 1)] += beta * rat(binomial(d - j, r - 1), 1) / denom;
    }
    return w;
}

Rational REstimator::lipschitz_bound() const {
    Rational bound = 1;
    for (const auto& [r, beta] : betas) bound += abs(beta);
    return bound;
}

Vector error_profile(const REstimator& est) {
    check_orders(est.d, est.orders);
    const Matrix k = k_matrix(est.d);
    Vector profile = vertex_targets(est.d);
    for (std::size_t c = 0; c <= static_cast<std::size_t>(est.d); ++c) {
        if (est.has_intercept()) profile[c] -= est.beta0;
        for (const auto& [r, beta] : est.betas)
            profile[c] -= beta * k(static_cast<std::size_t>(r - 1), c);
    }
    return profile;
}

SolveReport fit_optimal(int d, const std::set<int>& orders) {
    check_orders(d, orders);
    const Matrix k = k_matrix(d);
    const Vector targets = vertex_targets(d);
    const bool intercept = orders.count(0) > 0;

    std::vector<int> feature_orders(orders.begin(), orders.end());
    std::erase(feature_orders, 0);
    const std::size_t nf = feature_orders.size() + (intercept ? 1 : 0);

    Matrix features(static_cast<std::size_t>(d + 1), nf);
    for (std::size_t c = 0; c <= static_cast<std::size_t>(d); ++c) {
        std::size_t col = 0;
        if (intercept) features(c, col++) = 1;
        for (int r : feature_orders)
            features(c, col++) = k(static_cast<std::size_t>(r - 1), c);
    }

    const MinimaxFit fit = lp_minimax(targets, features);

    SolveReport report;
    report.estimator.d = d;
    report.estimator.orders = orders;
    std::size_t col = 0;
    if (intercept) report.estimator.beta0 = fit.coeffs[col++];
    for (int r : feature_orders) report.estimator.betas[r] = fit.coeffs[col++];
    report.err = fit.g;
    report.duals = fit.duals;
    report.profile = error_profile(report.estimator);

    Rational worst = 0;
    for (const Rational& p : report.profile) {
        const Rational a = abs(p);
        if (a > worst) worst = a;
    }
    if (worst != report.err)
        throw std::logic_error("vertex profile disagrees with the fitted objective");

    if (intercept) {
        // Same fit through the spread-minimizing form: the centred
        // half-spread must reproduce the free-intercept optimum.
        Vector gamma = targets;
        for (std::size_t c = 0; c <= static_cast<std::size_t>(d); ++c)
            for (const auto& [r, beta] : report.estimator.betas)
                gamma[c] -= beta * k(static_cast<std::size_t>(r - 1), c);
        const auto [center, spread] = chebyshev_center(gamma);
        if (center != report.estimator.beta0 || spread != report.err)
            throw std::logic_error("free intercept disagrees with the centred form");

        const std::size_t nb = feature_orders.size();
        LinearProgram lp;
        lp.objective.assign(nb + 2, Rational(0));
        lp.objective[nb] = 1;       // u
        lp.objective[nb + 1] = -1;  // l
        lp.constraints = Matrix(2 * static_cast<std::size_t>(d + 1), nb + 2);
        lp.rhs.resize(2 * static_cast<std::size_t>(d + 1));
        lp.senses.assign(2 * static_cast<std::size_t>(d + 1), Sense::le);
        lp.bounds.assign(nb + 2, VarBound::free_var);
        for (std::size_t c = 0; c <= static_cast<std::size_t>(d); ++c) {
            for (std::size_t f = 0; f < nb; ++f) {
                const Rational& kv = k(static_cast<std::size_t>(feature_orders[f] - 1), c);
                lp.constraints(2 * c, f) = -kv;     // targets - K beta <= u
                lp.constraints(2 * c + 1, f) = kv;  // l <= targets - K beta
            }
            lp.constraints(2 * c, nb) = -1;
            lp.constraints(2 * c + 1, nb + 1) = 1;
            lp.rhs[2 * c] = -targets[c];
            lp.rhs[2 * c + 1] = targets[c];
        }
        const LpSolution spread_fit = solve_lp(lp);
        if (spread_fit.status != LpSolution::Status::optimal ||
            spread_fit.value != 2 * report.err)
            throw std::logic_error("spread-minimizing fit disagrees with the epigraph fit");
    }
    return report;
}

bool verify_certificate(const SolveReport& report) {
    const REstimator& est = report.estimator;
    const Matrix k = k_matrix(est.d);
    const Vector targets = vertex_targets(est.d);
    const std::size_t p = targets.size();
    if (report.duals.size() != 2 * p) return false;

    // Dual feasibility plus complementary slackness of the epigraph rows,
    // then strong duality against the reported objective.
    Rational dual_obj = 0;
    Rational g_coef = 0;
    for (std::size_t c = 0; c < p; ++c) {
        const Rational& yp = report.duals[2 * c];
        const Rational& ym = report.duals[2 * c + 1];
        if (sgn(yp) < 0 || sgn(ym) < 0) return false;
        Rational fitted = est.has_intercept() ? est.beta0 : Rational(0);
        for (const auto& [r, beta] : est.betas)
            fitted += beta * k(static_cast<std::size_t>(r - 1), c);
        const Rational resid = targets[c] - fitted;
        if (sgn(yp) != 0 && resid != report.err) return false;
        if (sgn(ym) != 0 && resid != -report.err) return false;
        if (abs(resid) > report.err) return false;
        dual_obj += targets[c] * (yp - ym);
        g_coef += yp + ym;
    }
    if (g_coef != 1) return false;  // multipliers price the epigraph variable
    for (const auto& [r, beta] : est.betas) {
        Rational stat = 0;
        for (std::size_t c = 0; c < p; ++c)
            stat += k(static_cast<std::size_t>(r - 1), c) *
                    (report.duals[2 * c] - report.duals[2 * c + 1]);
        if (sgn(stat) != 0) return false;
    }
    if (est.has_intercept()) {
        Rational stat = 0;
        for (std::size_t c = 0; c < p; ++c)
            stat += report.duals[2 * c] - report.duals[2 * c + 1];
        if (sgn(stat) != 0) return false;
    }
    return dual_obj == report.err;
}

std::optional<ClosedFormError> closed_form_error(int d, const std::set<int>& orders) {
    if (d < 2) throw std::invalid_argument("estimators require d >= 2");
    if (orders == std::set<int>{d - 1})
        return ClosedFormError{rat(1, 2L * d - 1), false};
    if (orders == std::set<int>{0, d - 1})
        return ClosedFormError{rat(1, 2L * d), false};
    std::set<int> full;
    for (int r = 0; r < d; ++r) full.insert(r);
    if (orders == full)
        return ClosedFormError{pow_rational(rat(1, 2), static_cast<unsigned>(d)), true};
    return std::nullopt;
}

REstimator full_coefficients(int d) {
    if (d < 2) throw std::invalid_argument("full_coefficients requires d >= 2");
    REstimator est;
    est.d = d;
    for (int r = 0; r < d; ++r) est.orders.insert(r);
    const Rational half = rat(1, 2);
    est.beta0 = pow_rational(half, static_cast<unsigned>(d));
    for (int r = 1; r <= d - 1; ++r) {
        Rational v = pow_rational(-half, static_cast<unsigned>(d - r)) * rat(binomial(d, r), 1);
        est.betas[r] = -v;
    }

    const Vector profile = error_profile(est);
    Rational worst = 0;
    for (const Rational& p : profile) {
        const Rational a = abs(p);
        if (a > worst) worst = a;
    }
    if (worst != est.beta0)
        throw CoefficientVerificationError(
            "full coefficient pattern missed the 1/2^d vertex error", profile);
    return est;
}

std::pair<Rational, Rational> chebyshev_center(const Vector& gamma) {
    if (gamma.empty()) throw std::invalid_argument("chebyshev_center of an empty set");
    Rational lo = gamma[0], hi = gamma[0];
    for (const Rational& g : gamma) {
        if (g < lo) lo = g;
        if (g > hi) hi = g;
    }
    return {(hi + lo) / 2, (hi - lo) / 2};
}

Rational measure_lower_bound(int d, const std::set<int>& orders, const Rational& eps) {
    check_orders(d, orders);
    if (orders.count(0) == 0)
        throw std::invalid_argument("measure bound requires 0 in R");
    const Rational err = fit_optimal(d, orders).err;
    if (eps >= err / 2)
        throw std::invalid_argument("measure bound requires eps < err(R)/2");
    return pow_rational(err / 2 - eps, static_cast<unsigned>(d));
}

std::vector<TableRow> enumerate_table(int d_max) {
    if (d_max < 2) throw std::invalid_argument("table requires d_max >= 2");
    std::vector<TableRow> rows;
    for (int d = 2; d <= d_max; ++d) {
        std::vector<std::set<int>> subsets;
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            std::set<int> orders;
            for (int r = 0; r < d; ++r)
                if (mask & (1u << r)) orders.insert(r);
            subsets.push_back(std::move(orders));
        }
        std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        for (auto& orders : subsets) {
            TableRow row;
            row.d = d;
            row.err = fit_optimal(d, orders).err;
            row.orders = std::move(orders);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace maxapprox
