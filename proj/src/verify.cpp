#include "maxapprox/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "maxapprox/fitting.hpp"
#include "maxapprox/l2.hpp"
#include "maxapprox/networks.hpp"
#include "maxapprox/oracles.hpp"

namespace maxapprox {

namespace {

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void check_exact(std::vector<CheckResult>& out, std::string name, const Rational& expected,
                 const Rational& got) {
    out.push_back({std::move(name), to_fraction_string(expected), to_fraction_string(got),
                   expected == got});
}

void check_true(std::vector<CheckResult>& out, std::string name, bool pass,
                std::string expected = "true", std::string got = "") {
    if (got.empty()) got = pass ? "true" : "false";
    out.push_back({std::move(name), std::move(expected), std::move(got), pass});
}

std::string orders_str(const std::set<int>& orders) {
    std::string s = "{";
    for (int r : orders) s += (s.size() > 1 ? "," : "") + std::to_string(r);
    return s + "}";
}

// The 22 published optimal errors for d = 2..4, {0} rows omitted there.
struct RefRow {
    int d;
    std::set<int> orders;
    long num, den;
};

const std::vector<RefRow>& reference_rows() {
    static const std::vector<RefRow> rows = {
        {2, {1}, 1, 3},          {2, {0, 1}, 1, 4},
        {3, {1}, 1, 2},          {3, {2}, 1, 5},
        {3, {0, 1}, 1, 3},       {3, {0, 2}, 1, 6},
        {3, {1, 2}, 1, 7},       {3, {0, 1, 2}, 1, 8},
        {4, {1}, 3, 5},          {4, {2}, 1, 3},
        {4, {3}, 1, 7},          {4, {0, 1}, 3, 8},
        {4, {0, 2}, 1, 4},       {4, {0, 3}, 1, 8},
        {4, {1, 2}, 1, 5},       {4, {1, 3}, 1, 9},
        {4, {2, 3}, 1, 13},      {4, {0, 1, 2}, 1, 6},
        {4, {0, 1, 3}, 1, 10},   {4, {0, 2, 3}, 1, 14},
        {4, {1, 2, 3}, 1, 15},   {4, {0, 1, 2, 3}, 1, 16},
    };
    return rows;
}

void suite_table(std::vector<CheckResult>& out, const VerifyOptions&) {
    for (const RefRow& row : reference_rows())
        check_exact(out, "table d=" + std::to_string(row.d) + " R=" + orders_str(row.orders),
                    rat(row.num, row.den), fit_optimal(row.d, row.orders).err);
    for (int d = 2; d <= 4; ++d)
        check_exact(out, "table d=" + std::to_string(d) + " R={0}", rat(1, 2),
                    fit_optimal(d, {0}).err);
}

void suite_closed_form(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const int d_max = opt.d_max > 0 ? opt.d_max : 16;
    for (int d = 2; d <= d_max; ++d) {
        check_exact(out, "err({d-1}) = 1/(2d-1), d=" + std::to_string(d), rat(1, 2L * d - 1),
                    fit_optimal(d, {d - 1}).err);
        check_exact(out, "err({0,d-1}) = 1/(2d), d=" + std::to_string(d), rat(1, 2L * d),
                    fit_optimal(d, {0, d - 1}).err);
        const auto cf1 = closed_form_error(d, {d - 1});
        const auto cf2 = closed_form_error(d, {0, d - 1});
        check_true(out, "closed forms cover {d-1} and {0,d-1}, d=" + std::to_string(d),
                   cf1 && cf1->value == rat(1, 2L * d - 1) && !cf1->upper_bound_only && cf2 &&
                       cf2->value == rat(1, 2L * d) && !cf2->upper_bound_only);
    }
}

void suite_full_r(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const int d_max = opt.d_max > 0 ? std::min(opt.d_max, 12) : 12;
    for (int d = 2; d <= d_max; ++d) {
        const Rational bound = pow_rational(rat(1, 2), static_cast<unsigned>(d));
        const REstimator full = full_coefficients(d);
        check_exact(out, "full coefficients reach 1/2^d, d=" + std::to_string(d), bound,
                    vertex_error(full));
        std::set<int> orders;
        for (int r = 0; r < d; ++r) orders.insert(r);
        check_exact(out, "fitted full-R error equals 1/2^d, d=" + std::to_string(d), bound,
                    fit_optimal(d, orders).err);
    }
}

void suite_networks(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const int d_max = opt.d_max > 0 ? opt.d_max : 16;
    const long samples = opt.samples > 0 ? opt.samples : 200;
    DetRng rng(opt.seed);

    bool pairwise_ok = true;
    for (int d = 2; d <= d_max && pairwise_ok; ++d) {
        const ReluNetwork net = pairwise_max_network(d);
        Vector x(static_cast<std::size_t>(d));
        for (long s = 0; s < samples; ++s) {
            Rational best;
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = rng.uniform_rational() * 3 - 1;
                if (i == 0 || x[i] > best) best = x[i];
            }
            if (net.forward(x)[0] != best) {
                pairwise_ok = false;
                break;
            }
        }
    }
    check_true(out, "pairwise max network is exact, d<=" + std::to_string(d_max), pairwise_ok);

    bool d1_ok = true;
    for (int d = 3; d <= std::min(d_max, 12) && d1_ok; ++d) {
        const ReluNetwork net = d1_estimator_network(d);
        REstimator est;
        est.d = d;
        est.orders = {0, d - 1};
        est.beta0 = rat(1, 2L * d);
        est.betas[d - 1] = 1;
        Vector x(static_cast<std::size_t>(d));
        for (long s = 0; s < samples; ++s) {
            for (auto& v : x) v = rng.uniform_rational();
            if (net.forward(x)[0] != est.evaluate(x)) {
                d1_ok = false;
                break;
            }
        }
        if (vertex_error(est) != rat(1, 2L * d)) d1_ok = false;
    }
    check_true(out, "d1 network matches its estimator, d<=12", d1_ok);

    bool heaviside_ok = true;
    for (long s = 0; s < samples && heaviside_ok; ++s) {
        const int d = 1 + static_cast<int>(rng.raw() % 6);
        const Rational xi = rng.uniform_rational() * 2 - 1;
        const ReluNetwork net = heaviside_gate(d, xi);
        Vector x(static_cast<std::size_t>(d));
        Rational best;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.uniform_rational() * 2 - 1;
            if (i == 0 || x[i] > best) best = x[i];
        }
        const bool below = sgn(net.forward(x)[0]) <= 0;
        heaviside_ok = below == (best <= xi);
    }
    check_true(out, "heaviside gate biconditional", heaviside_ok);
}

void suite_schedule(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const int d_max = opt.d_max > 0 ? opt.d_max : 40;
    bool consistent = true;
    std::string detail = "ok";
    for (int d = 3; d <= d_max; ++d) {
        try {
            const TupleSchedule s = tuple_schedule(d);
            const WidthSchedule w = width_schedule(d);
            if (w.widths[0] > static_cast<std::size_t>(2 * d - 3)) {
                consistent = false;
                detail = "first width bound failed at d=" + std::to_string(d);
                break;
            }
            for (int j = 1; j <= s.depth; ++j)
                if (s.tuples[static_cast<std::size_t>(j - 1)].size() !=
                    w.widths[static_cast<std::size_t>(j - 1)]) {
                    consistent = false;
                    detail = "width mismatch at d=" + std::to_string(d);
                }
        } catch (const std::exception& e) {
            consistent = false;
            detail = std::string("d=") + std::to_string(d) + ": " + e.what();
            break;
        }
    }
    check_true(out, "tuple schedule matches widths, d=3.." + std::to_string(d_max), consistent,
               "ok", detail);

    if (d_max >= 10) {
        const TupleSchedule s = tuple_schedule(10);
        check_true(out, "d=10 layer sizes 17/16/12/10",
                   s.depth == 4 && s.tuples[0].size() == 17 && s.tuples[1].size() == 16 &&
                       s.tuples[2].size() == 12 && s.tuples[3].size() == 10);
        check_true(out, "d=10 repeated tuples 9/6/2",
                   s.repeated_counts[0] == 9 && s.repeated_counts[1] == 6 &&
                       s.repeated_counts[2] == 2);
    }
}

void suite_l2(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const long samples = opt.samples > 0 ? opt.samples : 200'000;
    for (int d = 2; d <= 8; ++d) {
        const L2Report rep = l2_optimal(d);
        check_true(out, "squared error strictly positive, d=" + std::to_string(d),
                   sgn(rep.normalized_sq_error) > 0, "> 0",
                   to_fraction_string(rep.normalized_sq_error));
        if (d <= 6) {
            const Vector resid = [&] {
                Vector a(static_cast<std::size_t>(d + 1), Rational(1));
                a[0] = 0;
                return a - rep.xi * rep.alpha_star;
            }();
            const Vector orth = rep.xi.transposed() * (rep.sigma * resid);
            bool zero = true;
            for (const Rational& v : orth) zero = zero && sgn(v) == 0;
            check_true(out, "residual orthogonality, d=" + std::to_string(d), zero);
        }
    }
    const L2Report rep2 = l2_optimal(2);
    check_exact(out, "d=2 squared error", rat(1, 72), rep2.normalized_sq_error);
    check_exact(out, "d=2 intercept", rat(1, 6), rep2.alpha0_star);
    check_true(out, "d=2 slope", rep2.alpha_star.size() == 1 && rep2.alpha_star[0] == 1);

    // Monte Carlo agreement of the mean squared error under the cube
    // measure, d = 2 and 3, three-sigma band.
    DetRng rng(opt.seed);
    for (int d = 2; d <= 3; ++d) {
        const L2Report rep = l2_optimal(d);
        REstimator est;
        est.d = d;
        for (int r = 0; r < d; ++r) est.orders.insert(r);
        est.beta0 = rep.alpha0_star;
        for (int r = 1; r <= d - 1; ++r)
            est.betas[r] = rep.alpha_star[static_cast<std::size_t>(r - 1)];
        const double exact = to_double(rep.normalized_sq_error);

        std::vector<double> x(static_cast<std::size_t>(d));
        double sum = 0.0, sumsq = 0.0;
        const double beta0 = to_double(est.beta0);
        std::vector<double> w;
        for (const Rational& q : est.order_stat_weights()) w.push_back(to_double(q));
        for (long s = 0; s < samples; ++s) {
            for (auto& v : x) v = rng.uniform01();
            std::sort(x.begin(), x.end(), std::greater<double>());
            double fitted = beta0;
            for (int j = 0; j < d; ++j)
                fitted += w[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            const double e2 = (x[0] - fitted) * (x[0] - fitted);
            sum += e2;
            sumsq += e2 * e2;
        }
        const double n = static_cast<double>(samples);
        const double mean = sum / n;
        const double sigma = std::sqrt(std::max(sumsq / n - mean * mean, 0.0) / n);
        check_true(out, "monte carlo mse within 3 sigma, d=" + std::to_string(d),
                   std::abs(mean - exact) <= 3 * sigma + 1e-12,
                   fmt(exact) + " +/- " + fmt(3 * sigma), fmt(mean));
    }

    // Covariance sanity: zero row sums exactly, simulated variance close.
    for (int d = 1; d <= 6; ++d) {
        const Matrix sigma = dirichlet_covariance(d);
        bool zero = true;
        for (std::size_t i = 0; i < sigma.rows(); ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < sigma.cols(); ++j) s += sigma(i, j);
            zero = zero && sgn(s) == 0;
        }
        check_true(out, "covariance rows sum to zero, d=" + std::to_string(d), zero);
    }
    {
        const long n = samples;
        double sum = 0.0, sumsq = 0.0;
        for (long s = 0; s < n; ++s) {
            const double a = rng.uniform01(), b = rng.uniform01();
            const double lambda1 = 1.0 - std::max(a, b);
            sum += lambda1;
            sumsq += lambda1 * lambda1;
        }
        const double mean = sum / static_cast<double>(n);
        const double var = sumsq / static_cast<double>(n) - mean * mean;
        const double se = std::sqrt(2.0 / static_cast<double>(n));  // loose band
        check_true(out, "simulated spacing variance matches 1/18",
                   std::abs(var - 1.0 / 18.0) <= 3 * se, "1/18 +/- " + fmt(3 * se), fmt(var));
    }
}

void suite_oracles(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const long samples = opt.samples > 0 ? opt.samples : 10'000;
    DetRng rng(opt.seed);

    bool max2_ok = true, max3_ok = true;
    for (long s = 0; s < samples; ++s) {
        const Rational a = rng.uniform_rational(24) * 4 - 2;
        const Rational b = s % 7 == 0 ? a : rng.uniform_rational(24) * 4 - 2;
        const Rational c = rng.uniform_rational(24) * 4 - 2;
        max2_ok = max2_ok && max2_closed(a, b) == (a > b ? a : b);
        Rational m = a > b ? a : b;
        if (c > m) m = c;
        max3_ok = max3_ok && max3_closed(a, b, c) == m;
    }
    max3_ok = max3_ok && max3_closed(rat(5, 7), rat(5, 7), rat(5, 7)) == rat(5, 7);
    check_true(out, "two-input closed form equals max", max2_ok);
    check_true(out, "three-input closed form equals max", max3_ok);

    const struct {
        int d, r;
    } cases[] = {{4, 2}, {5, 3}, {6, 1}};
    for (const auto& c : cases) {
        const double p = sliver_coverage(c.d, c.r, samples, rng.raw());
        double expected = 1.0;
        for (int i = 2; i <= c.r; ++i) expected /= i;
        const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(samples));
        check_true(out,
                   "sliver coverage 1/r!, d=" + std::to_string(c.d) + " r=" + std::to_string(c.r),
                   std::abs(p - expected) <= 3 * sigma + 1e-9,
                   fmt(expected) + " +/- " + fmt(3 * sigma), fmt(p));
    }

    const struct {
        int d, n;
        std::set<int> orders;
    } grids[] = {{2, 101, {0, 1}}, {3, 51, {0, 2}}};
    for (const auto& g : grids) {
        const SolveReport rep = fit_optimal(g.d, g.orders);
        const double exact = to_double(rep.err);
        const double grid = grid_error(rep.estimator, g.n);
        const double gap = to_double(rep.estimator.lipschitz_bound()) / (g.n - 1);
        check_true(out, "grid error brackets the exact error, d=" + std::to_string(g.d),
                   grid <= exact + 1e-12 && grid >= exact - gap,
                   "[" + fmt(exact - gap) + ", " + fmt(exact) + "]", fmt(grid));
        const RandomErrorReport rnd = random_error(rep.estimator, samples, rng.raw());
        check_true(out, "random error below the exact error, d=" + std::to_string(g.d),
                   rnd.max_error <= exact + 1e-12, "<= " + fmt(exact), fmt(rnd.max_error));
    }
}

void suite_measure(std::vector<CheckResult>& out, const VerifyOptions& opt) {
    const long samples = opt.samples > 0 ? opt.samples : 100'000;
    DetRng rng(opt.seed);
    const struct {
        int d;
        std::set<int> orders;
    } cases[] = {{2, {0, 1}}, {3, {0, 2}}, {4, {0, 3}}};
    for (const auto& c : cases) {
        const SolveReport rep = fit_optimal(c.d, c.orders);
        const Rational eps = rep.err / 4;
        const Rational bound = measure_lower_bound(c.d, c.orders, eps);
        const RandomErrorReport rnd =
            random_error(rep.estimator, samples, rng.raw(), to_double(eps));
        const double p = rnd.fraction_at_least_eps;
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(samples));
        check_true(out, "error volume above its lower bound, d=" + std::to_string(c.d),
                   p >= to_double(bound) - 3 * sigma,
                   ">= " + to_fraction_string(bound) + " - 3 sigma", fmt(p));
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"table", "closed-form", "full-r", "networks", "schedule", "l2", "oracles", "measure"};
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options) {
    std::vector<CheckResult> out;
    if (suite == "all") {
        for (const std::string& name : suite_names()) {
            auto part = run_suite(name, options);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (suite == "table")
        suite_table(out, options);
    else if (suite == "closed-form")
        suite_closed_form(out, options);
    else if (suite == "full-r")
        suite_full_r(out, options);
    else if (suite == "networks")
        suite_networks(out, options);
    else if (suite == "schedule")
        suite_schedule(out, options);
    else if (suite == "l2")
        suite_l2(out, options);
    else if (suite == "oracles")
        suite_oracles(out, options);
    else if (suite == "measure")
        suite_measure(out, options);
    else
        throw std::invalid_argument("unknown verification suite: " + suite);
    return out;
}

}  // namespace maxapprox
