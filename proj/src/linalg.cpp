#include "maxapprox/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace maxapprox {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
        for (const auto& v : row) a_.push_back(v);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = (*this)(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational& aij = (*this)(i, j);
            if (sgn(aij) != 0) out[i] += aij * v[j];
        }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector difference dimension mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot product dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

struct Echelon {
    Matrix m;                       // eliminated [A | b]
    std::vector<std::size_t> perm;  // row of m -> original row index
    std::vector<std::size_t> pivot_col;  // per eliminated row, in elimination order
};

// Forward elimination with exact division; pivots on the first nonzero
// entry in each column.
Echelon eliminate(const Matrix& A, const Vector& b) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m) throw std::invalid_argument("right-hand side size mismatch");
    Echelon e;
    e.m = Matrix(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) e.m(i, j) = A(i, j);
        e.m(i, n) = b[i];
    }
    e.perm.resize(m);
    for (std::size_t i = 0; i < m; ++i) e.perm[i] = i;

    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && sgn(e.m(piv, col)) == 0) ++piv;
        if (piv == m) continue;
        if (piv != row) {
            for (std::size_t j = 0; j <= n; ++j) std::swap(e.m(piv, j), e.m(row, j));
            std::swap(e.perm[piv], e.perm[row]);
        }
        const Rational p = e.m(row, col);
        for (std::size_t i = row + 1; i < m; ++i) {
            if (sgn(e.m(i, col)) == 0) continue;
            const Rational f = e.m(i, col) / p;
            for (std::size_t j = col; j <= n; ++j) e.m(i, j) -= f * e.m(row, j);
        }
        e.pivot_col.push_back(col);
        ++row;
    }
    return e;
}

// Back substitution over the echelon form; free columns get zero.
Vector back_substitute(const Echelon& e, std::size_t n) {
    Vector x(n, Rational(0));
    for (std::size_t k = e.pivot_col.size(); k-- > 0;) {
        const std::size_t col = e.pivot_col[k];
        Rational rhs = e.m(k, n);
        for (std::size_t j = col + 1; j < n; ++j)
            if (sgn(e.m(k, j)) != 0) rhs -= e.m(k, j) * x[j];
        x[col] = rhs / e.m(k, col);
    }
    return x;
}

// 1-based original index of the first row reduced to 0 = nonzero.
std::size_t first_contradiction(const Echelon& e, std::size_t n) {
    const std::size_t rank = e.pivot_col.size();
    std::size_t best = 0;
    for (std::size_t i = rank; i < e.m.rows(); ++i) {
        if (sgn(e.m(i, n)) != 0) {
            const std::size_t orig = e.perm[i] + 1;
            if (best == 0 || orig < best) best = orig;
        }
    }
    return best;
}

}  // namespace

LinearSolveReport solve_linear_system(const Matrix& A, const Vector& b) {
    if (A.rows() < A.cols())
        throw std::invalid_argument("solve_linear_system requires rows >= cols");
    const std::size_t n = A.cols();
    Echelon e = eliminate(A, b);

    LinearSolveReport report;
    if (std::size_t bad = first_contradiction(e, n); bad != 0) {
        report.status = LinearSolveReport::Status::inconsistent;
        report.offending_row = bad;
        return report;
    }
    if (e.pivot_col.size() < n) {
        report.status = LinearSolveReport::Status::rank_deficient;
        report.offending_row = e.pivot_col.size() + 1;
        return report;
    }
    report.solution = back_substitute(e, n);
    return report;
}

std::optional<Vector> solve_any_solution(const Matrix& A, const Vector& b) {
    const std::size_t n = A.cols();
    Echelon e = eliminate(A, b);
    if (first_contradiction(e, n) != 0) return std::nullopt;
    return back_substitute(e, n);
}

Rational determinant(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = A.rows();
    Matrix m = A;
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(m(piv, col)) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        const Rational p = m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(m(i, col)) == 0) continue;
            const Rational f = m(i, col) / p;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

PsdProjection psd_project_residual(const Vector& A, const Matrix& Xi, const Matrix& Sigma) {
    const std::size_t n = A.size();
    if (Sigma.rows() != n || Sigma.cols() != n || Xi.rows() != n)
        throw std::invalid_argument("psd_project_residual dimension mismatch");

    const Matrix XiT = Xi.transposed();
    const Matrix XiTS = XiT * Sigma;
    const Matrix normal = XiTS * Xi;
    const Vector rhs = XiTS * A;

    auto alpha = solve_any_solution(normal, rhs);
    if (!alpha)
        throw std::invalid_argument("inconsistent normal equations; Sigma is not PSD");

    const Vector resid = A - Xi * *alpha;
    PsdProjection out;
    out.alpha = std::move(*alpha);
    out.residual_quadratic = dot(resid, Sigma * resid);
    return out;
}

}  // namespace maxapprox
