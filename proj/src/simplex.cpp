#include "maxapprox/simplex.hpp"

#include <cstdint>
#include <stdexcept>

namespace maxapprox {

namespace {

struct Tableau {
    // rows x (ncols + 1); last column holds the basic values
    std::vector<Vector> t;
    std::vector<std::size_t> basis;   // per row, column index
    Vector cost;                      // reduced costs, length ncols
    Rational value;                   // objective at current basis
    std::size_t ncols = 0;

    std::size_t rows() const { return t.size(); }

    void pivot(std::size_t r, std::size_t e) {
        const Rational p = t[r][e];
        for (auto& v : t[r]) v /= p;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || sgn(t[i][e]) == 0) continue;
            const Rational f = t[i][e];
            for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[r][j];
        }
        if (sgn(cost[e]) != 0) {
            const Rational f = cost[e];
            for (std::size_t j = 0; j < ncols; ++j) cost[j] -= f * t[r][j];
            value += f * t[r][ncols];
        }
        basis[r] = e;
    }

    // Bland's rule: entering column is the lowest index with negative
    // reduced cost, leaving row breaks ratio ties on the lowest basic index.
    // Returns optimal, or unbounded on a column with no positive entry.
    enum class Outcome { optimal, unbounded };
    Outcome run(std::size_t enterable_limit) {
        for (;;) {
            std::size_t e = ncols;
            for (std::size_t j = 0; j < enterable_limit; ++j)
                if (sgn(cost[j]) < 0) { e = j; break; }
            if (e == ncols) return Outcome::optimal;

            std::size_t r = rows();
            for (std::size_t i = 0; i < rows(); ++i) {
                if (sgn(t[i][e]) <= 0) continue;
                if (r == rows()) { r = i; continue; }
                const int c = cmp(t[i][ncols] * t[r][e], t[r][ncols] * t[i][e]);
                if (c < 0 || (c == 0 && basis[i] < basis[r])) r = i;
            }
            if (r == rows()) return Outcome::unbounded;
            pivot(r, e);
        }
    }

    void reset_cost(const Vector& c) {
        cost = c;
        value = 0;
        for (std::size_t i = 0; i < rows(); ++i) {
            const Rational cb = c[basis[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < ncols; ++j) cost[j] -= cb * t[i][j];
            value += cb * t[i][ncols];
        }
    }
};

struct ColInfo {
    std::size_t var = 0;  // original variable
    int sign = +1;        // +1 for the positive part, -1 for the negative
    bool slack = false;
};

void certify_optimal(const LinearProgram& lp, const Vector& x, const Vector& y,
                     const Rational& value) {
    const std::size_t m = lp.constraints.rows(), n = lp.constraints.cols();
    const Vector gx = lp.constraints * x;
    Rational dual_value = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Rational slack = lp.rhs[i] - gx[i];
        if (lp.senses[i] == Sense::le) {
            if (sgn(slack) < 0) throw std::logic_error("lp certificate: primal infeasible row");
            if (sgn(y[i]) < 0) throw std::logic_error("lp certificate: negative inequality dual");
            if (sgn(y[i]) != 0 && sgn(slack) != 0)
                throw std::logic_error("lp certificate: complementary slackness violated");
        } else if (sgn(slack) != 0) {
            throw std::logic_error("lp certificate: equality row violated");
        }
        dual_value -= lp.rhs[i] * y[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = lp.objective[j];
        for (std::size_t i = 0; i < m; ++i)
            if (sgn(y[i]) != 0) s += y[i] * lp.constraints(i, j);
        if (lp.bounds[j] == VarBound::free_var) {
            if (sgn(s) != 0) throw std::logic_error("lp certificate: stationarity violated");
        } else {
            if (sgn(x[j]) < 0) throw std::logic_error("lp certificate: bound violated");
            if (sgn(s) < 0) throw std::logic_error("lp certificate: dual infeasible column");
            if (sgn(s) != 0 && sgn(x[j]) != 0)
                throw std::logic_error("lp certificate: column slackness violated");
        }
    }
    if (dot(lp.objective, x) != value || dual_value != value)
        throw std::logic_error("lp certificate: duality gap");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t m = lp.constraints.rows(), n = lp.constraints.cols();
    if (lp.objective.size() != n || lp.rhs.size() != m || lp.senses.size() != m ||
        lp.bounds.size() != n)
        throw std::invalid_argument("linear program with inconsistent dimensions");

    // Standard form: split free variables, add slacks, flip rows to b >= 0.
    std::vector<ColInfo> cols;
    for (std::size_t j = 0; j < n; ++j) {
        cols.push_back({j, +1, false});
        if (lp.bounds[j] == VarBound::free_var) cols.push_back({j, -1, false});
    }
    std::vector<std::size_t> slack_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i)
        if (lp.senses[i] == Sense::le) {
            slack_col[i] = cols.size();
            cols.push_back({i, +1, true});
        }
    const std::size_t ncols = cols.size();

    std::vector<int> flip(m, +1);
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(lp.rhs[i]) < 0) flip[i] = -1;

    // Column j of the flipped standard system; artificials live past ncols.
    auto std_entry = [&](std::size_t i, std::size_t j) -> Rational {
        if (j >= ncols) return j - ncols == i ? Rational(1) : Rational(0);
        const ColInfo& c = cols[j];
        Rational v;
        if (c.slack)
            v = (c.var == i) ? Rational(1) : Rational(0);
        else
            v = lp.constraints(i, c.var) * c.sign;
        return flip[i] < 0 ? Rational(-v) : v;
    };

    Tableau tab;
    tab.ncols = ncols + m;  // artificials appended
    tab.t.assign(m, Vector(tab.ncols + 1));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) tab.t[i][j] = std_entry(i, j);
        tab.t[i][ncols + i] = 1;
        tab.t[i][tab.ncols] = flip[i] < 0 ? Rational(-lp.rhs[i]) : lp.rhs[i];
        tab.basis[i] = ncols + i;
    }

    // Phase 1: minimize the sum of artificials.
    Vector phase1(tab.ncols, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[ncols + i] = 1;
    tab.reset_cost(phase1);
    tab.run(tab.ncols);
    LpSolution out;
    if (sgn(tab.value) != 0) {
        out.status = LpSolution::Status::infeasible;
        return out;
    }

    // Drive artificials out of the basis where a real pivot exists. A row
    // with no real pivot left is redundant: its tableau row is zero on
    // every real column, later pivots cannot touch it, and its artificial
    // stays basic at value zero with zero phase-2 cost.
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.basis[i] < ncols) continue;
        for (std::size_t j = 0; j < ncols; ++j)
            if (sgn(tab.t[i][j]) != 0) {
                tab.pivot(i, j);
                break;
            }
    }

    // Phase 2: the real objective; artificials keep cost zero and never
    // re-enter.
    Vector phase2(tab.ncols, Rational(0));
    for (std::size_t j = 0; j < ncols; ++j)
        if (!cols[j].slack) phase2[j] = lp.objective[cols[j].var] * cols[j].sign;
    tab.reset_cost(phase2);
    if (tab.run(ncols) == Tableau::Outcome::unbounded) {
        out.status = LpSolution::Status::unbounded;
        return out;
    }

    out.status = LpSolution::Status::optimal;
    out.value = tab.value;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.basis[i] >= ncols) continue;  // frozen artificial at zero
        const ColInfo& c = cols[tab.basis[i]];
        if (!c.slack) out.x[c.var] += tab.t[i][tab.ncols] * c.sign;
    }

    // Multipliers from the terminal basis: solve B' z = c_B against the
    // original standard-form columns, then undo the row flips.
    Matrix bt(m, m);
    Vector cb(m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) bt(a, b) = std_entry(b, tab.basis[a]);
        cb[a] = phase2[tab.basis[a]];
    }
    const LinearSolveReport duals = solve_linear_system(bt, cb);
    if (!duals.ok()) throw std::logic_error("lp certificate: singular terminal basis");
    out.duals.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        out.duals[i] = flip[i] < 0 ? duals.solution[i] : Rational(-duals.solution[i]);

    certify_optimal(lp, out.x, out.duals, out.value);
    return out;
}

MinimaxFit lp_minimax(const Vector& targets, const Matrix& features) {
    const std::size_t p = targets.size(), k = features.cols();
    if (features.rows() != p) throw std::invalid_argument("one feature row per point required");
    if (p == 0) throw std::invalid_argument("minimax fit needs at least one point");

    LinearProgram lp;
    lp.objective.assign(k + 1, Rational(0));
    lp.objective[0] = 1;
    lp.constraints = Matrix(2 * p, k + 1);
    lp.rhs.resize(2 * p);
    lp.senses.assign(2 * p, Sense::le);
    lp.bounds.assign(k + 1, VarBound::free_var);
    for (std::size_t i = 0; i < p; ++i) {
        // target - f.coeffs <= g  and  f.coeffs - target <= g
        lp.constraints(2 * i, 0) = -1;
        lp.constraints(2 * i + 1, 0) = -1;
        for (std::size_t j = 0; j < k; ++j) {
            lp.constraints(2 * i, j + 1) = -features(i, j);
            lp.constraints(2 * i + 1, j + 1) = features(i, j);
        }
        lp.rhs[2 * i] = -targets[i];
        lp.rhs[2 * i + 1] = targets[i];
    }

    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpSolution::Status::optimal)
        throw std::logic_error("minimax epigraph program must be solvable");

    MinimaxFit fit;
    fit.g = sol.value;
    fit.coeffs.assign(sol.x.begin() + 1, sol.x.end());
    fit.duals = sol.duals;

    Rational worst = 0;
    for (std::size_t i = 0; i < p; ++i) {
        Rational r = targets[i];
        for (std::size_t j = 0; j < k; ++j) r -= features(i, j) * fit.coeffs[j];
        r = abs(r);
        if (r > worst) worst = r;
    }
    if (worst != fit.g) throw std::logic_error("minimax objective does not match residuals");
    return fit;
}

}  // namespace maxapprox
