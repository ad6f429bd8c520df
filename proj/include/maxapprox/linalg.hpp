#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>

#include "maxapprox/rational.hpp"

namespace maxapprox {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> init);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& v) const;
    Matrix transposed() const;

    bool operator==(const Matrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

Vector operator-(const Vector& a, const Vector& b);
Rational dot(const Vector& a, const Vector& b);

struct LinearSolveReport {
    enum class Status { solved, inconsistent, rank_deficient };
    Status status = Status::solved;
    Vector solution;
    /// 1-based row of the first contradiction (inconsistent), or the pivot
    /// step at which the matrix lost rank (rank_deficient).
    std::size_t offending_row = 0;

    bool ok() const { return status == Status::solved; }
};

/// Exact Gaussian elimination for square or overdetermined systems.
/// Requires a unique solution; rank deficiency and inconsistency are
/// reported, not thrown.
LinearSolveReport solve_linear_system(const Matrix& A, const Vector& b);

/// Elimination that tolerates rank deficiency: free variables are set to
/// zero. Returns nullopt when the system is inconsistent.
std::optional<Vector> solve_any_solution(const Matrix& A, const Vector& b);

/// Determinant of a square matrix by exact elimination.
Rational determinant(const Matrix& A);

struct PsdProjection {
    Vector alpha;
    Rational residual_quadratic;
};

/// Minimizes (A - Xi*alpha)' Sigma (A - Xi*alpha) for symmetric PSD Sigma by
/// solving the normal equations (Xi' Sigma Xi) alpha = Xi' Sigma A exactly.
/// Singular normal equations are solved with free variables at zero; the
/// residual value is the same for every solution.
PsdProjection psd_project_residual(const Vector& A, const Matrix& Xi, const Matrix& Sigma);

}  // namespace maxapprox
