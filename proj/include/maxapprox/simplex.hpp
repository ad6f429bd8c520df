#pragma once

#include "maxapprox/linalg.hpp"

namespace maxapprox {

enum class Sense { le, eq };
enum class VarBound { free_var, nonnegative };

/// min objective . x  subject to  constraints x (<=|=) rhs, per-variable
/// bound free or x_j >= 0.
struct LinearProgram {
    Vector objective;
    Matrix constraints;
    Vector rhs;
    std::vector<Sense> senses;
    std::vector<VarBound> bounds;
};

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::optimal;
    Rational value;
    Vector x;
    /// One multiplier per constraint row, in the convention
    /// objective + constraints' duals = 0 (componentwise over variables),
    /// duals >= 0 on inequality rows, value = -rhs . duals.
    Vector duals;
};

/// Primal simplex over exact rationals with Bland's anti-cycling rule
/// (two phases). An optimal result is certified internally: primal
/// feasibility, dual feasibility, complementary slackness and strong
/// duality are re-checked exactly before returning; violation of any of
/// them throws std::logic_error.
LpSolution solve_lp(const LinearProgram& lp);

struct MinimaxFit {
    Rational g;     // exact minimum of max_i |target_i - features_i . coeffs|
    Vector coeffs;
    Vector duals;   // terminal duals of the 2*points epigraph rows
};

/// Exact minimax linear fit: one epigraph variable plus two inequalities
/// per point. Degenerate feature matrices are fine; any optimal
/// coefficient vector is returned.
MinimaxFit lp_minimax(const Vector& targets, const Matrix& features);

}  // namespace maxapprox
