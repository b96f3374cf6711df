#pragma once

#include "toric/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>

namespace toric {

using QMat = std::vector<QVec>;
using IMat = std::vector<ZVec>;

inline QMat to_qmat(const IMat& m) {
    QMat out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(to_qvec(row));
    return out;
}

inline IMat imat_identity(size_t n) {
    IMat id(n, ZVec(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

inline IMat imat_transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat out(a[0].size(), ZVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
    return out;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
    IMat out(a.size(), ZVec(b.empty() ? 0 : b[0].size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            if (a[i][k] != 0)
                for (size_t j = 0; j < b[k].size(); ++j)
                    out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline ZVec imat_vec(const IMat& a, const ZVec& x) {
    ZVec out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
    return out;
}

inline QVec imat_vec(const IMat& a, const QVec& x) {
    QVec out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
    return out;
}

inline QVec qmat_vec(const QMat& a, const QVec& x) {
    QVec out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
    return out;
}

/// Row-reduces in place; returns rank.  Columns beyond `cols` (if any) are
/// carried along as right-hand sides.
inline size_t row_reduce(QMat& m, size_t cols) {
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < m.size(); ++col) {
        size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        const Rational inv = 1 / m[rank][col];
        for (auto& x : m[rank]) x *= inv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline size_t qmat_rank(QMat m) {
    if (m.empty()) return 0;
    return row_reduce(m, m[0].size());
}

inline size_t imat_rank(const IMat& m) { return qmat_rank(to_qmat(m)); }

/// Solves Ax = b when the solution is unique; nullopt if the system is
/// inconsistent or underdetermined.
inline std::optional<QVec> solve_unique(const QMat& a, const QVec& b) {
    if (a.empty()) return std::nullopt;
    const size_t n = a[0].size();
    QMat aug = a;
    for (size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    const size_t rank = row_reduce(aug, n);
    if (rank < n) return std::nullopt;
    for (size_t r = rank; r < aug.size(); ++r)
        if (aug[r][n] != 0) return std::nullopt;  // inconsistent
    QVec x(n);
    for (size_t r = 0; r < rank; ++r) {
        size_t lead = 0;
        while (lead < n && aug[r][lead] == 0) ++lead;
        x[lead] = aug[r][n];
    }
    return x;
}

inline std::optional<QMat> qmat_inverse(const QMat& a) {
    const size_t n = a.size();
    QMat aug = a;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? 1 : 0);
    if (row_reduce(aug, n) < n) return std::nullopt;
    QMat inv(n, QVec(n));
    for (size_t r = 0; r < n; ++r) {
        size_t lead = 0;
        while (aug[r][lead] == 0) ++lead;
        for (size_t j = 0; j < n; ++j) inv[lead][j] = aug[r][n + j];
    }
    return inv;
}

inline Rational qmat_det(QMat m) {
    const size_t n = m.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) { std::swap(m[pivot], m[col]); det = -det; }
        det *= m[col][col];
        const Rational inv = 1 / m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

inline Int imat_det(const IMat& m) {
    const Rational d = qmat_det(to_qmat(m));
    return numerator(d);
}

/// (g, x, y) with g = gcd(a,b) >= 0 and x*a + y*b = g.
inline std::tuple<Int, Int, Int> egcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int r = a - q * b;
        a = b; b = r;
        Int nx = x0 - q * x1, ny = y0 - q * y1;
        x0 = x1; y0 = y1; x1 = nx; y1 = ny;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

/// Column echelon form over Z: returns (E, U) with A * U = E, U unimodular,
/// and E in column echelon shape (pivot entries positive, zero columns last).
/// The columns of U opposite the zero columns of E are a basis of the
/// saturated integer kernel of A.
inline std::pair<IMat, IMat> column_echelon(IMat a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    IMat u = imat_identity(cols);
    auto colop = [&](IMat& m, size_t i, size_t j, const Int& p, const Int& q,
                     const Int& r, const Int& s) {
        // (col_i, col_j) <- (p*col_i + q*col_j, r*col_i + s*col_j)
        for (auto& row : m) {
            Int ni = p * row[i] + q * row[j];
            Int nj = r * row[i] + s * row[j];
            row[i] = ni; row[j] = nj;
        }
    };
    size_t pivot_col = 0;
    for (size_t r = 0; r < rows && pivot_col < cols; ++r) {
        size_t j = pivot_col;
        while (j < cols && a[r][j] == 0) ++j;
        if (j == cols) continue;
        if (j != pivot_col) {
            for (auto& row : a) std::swap(row[pivot_col], row[j]);
            for (auto& row : u) std::swap(row[pivot_col], row[j]);
        }
        for (size_t k = pivot_col + 1; k < cols; ++k) {
            if (a[r][k] == 0) continue;
            auto [g, x, y] = egcd(a[r][pivot_col], a[r][k]);
            const Int ag = a[r][pivot_col] / g, bg = a[r][k] / g;
            colop(a, pivot_col, k, x, y, -bg, ag);
            colop(u, pivot_col, k, x, y, -bg, ag);
        }
        if (a[r][pivot_col] < 0) {
            for (auto& row : a) row[pivot_col] = -row[pivot_col];
            for (auto& row : u) row[pivot_col] = -row[pivot_col];
        }
        ++pivot_col;
    }
    return {a, u};
}

/// Basis (as rows) of {d in Z^n : A d = 0}, saturated in Z^n.
inline IMat int_kernel_basis(const IMat& a, size_t n) {
    if (a.empty()) return imat_identity(n);
    auto [e, u] = column_echelon(a);
    const size_t rank = imat_rank(a);
    IMat basis;
    for (size_t j = rank; j < n; ++j) {
        ZVec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = u[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Diagonal of the Smith normal form (nonnegative, divisibility chain).
inline ZVec smith_diagonal(IMat a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    ZVec diag;
    size_t top = 0;
    while (top < rows && top < cols) {
        // find a nonzero entry to serve as pivot
        size_t pr = rows, pc = cols;
        for (size_t i = top; i < rows && pr == rows; ++i)
            for (size_t j = top; j < cols; ++j)
                if (a[i][j] != 0) { pr = i; pc = j; break; }
        if (pr == rows) break;
        std::swap(a[top], a[pr]);
        for (auto& row : a) std::swap(row[top], row[pc]);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = top + 1; i < rows; ++i) {
                if (a[i][top] == 0) continue;
                auto [g, x, y] = egcd(a[top][top], a[i][top]);
                const Int ag = a[top][top] / g, bg = a[i][top] / g;
                for (size_t j = top; j < cols; ++j) {
                    Int nt = x * a[top][j] + y * a[i][j];
                    Int ni = -bg * a[top][j] + ag * a[i][j];
                    a[top][j] = nt; a[i][j] = ni;
                }
            }
            for (size_t j = top + 1; j < cols; ++j) {
                if (a[top][j] == 0) continue;
                auto [g, x, y] = egcd(a[top][top], a[top][j]);
                const Int ag = a[top][top] / g, bg = a[top][j] / g;
                for (size_t i = top; i < rows; ++i) {
                    Int nt = x * a[i][top] + y * a[i][j];
                    Int nj = -bg * a[i][top] + ag * a[i][j];
                    a[i][top] = nt; a[i][j] = nj;
                }
                for (size_t i = top + 1; i < rows; ++i)
                    if (a[i][top] != 0) { again = true; break; }
            }
        }
        diag.push_back(boost::multiprecision::abs(a[top][top]));
        ++top;
    }
    // enforce the divisibility chain d1 | d2 | ...
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                Int g = boost::multiprecision::gcd(diag[i], diag[j]);
                Int l = diag[i] / g * diag[j];
                diag[i] = g; diag[j] = l;
            }
    return diag;
}

/// Integer inverse of a unimodular matrix.
inline IMat imat_inverse_unimodular(const IMat& a) {
    auto qinv = qmat_inverse(to_qmat(a));
    if (!qinv) throw Error("matrix is singular");
    IMat out(a.size(), ZVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
            if (denominator((*qinv)[i][j]) != 1)
                throw Error("matrix is not unimodular");
            out[i][j] = numerator((*qinv)[i][j]);
        }
    return out;
}

/// Completes a saturated k x n integer matrix M to a unimodular [M; P].
/// nullopt when the rows of M do not span a direct summand of Z^n.
inline std::optional<IMat> unimodular_completion(const IMat& m, size_t n) {
    const size_t k = m.size();
    auto [e, u] = column_echelon(m);
    IMat lead(k, ZVec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) lead[i][j] = e[i][j];
    if (boost::multiprecision::abs(imat_det(lead)) != 1) return std::nullopt;
    IMat uinv = imat_inverse_unimodular(u);
    IMat p;
    for (size_t i = k; i < n; ++i) p.push_back(uinv[i]);
    return p;
}

}  // namespace toric
