#pragma once

#include "toric/linalg.hpp"

#include <cstddef>
#include <utility>

namespace toric {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value = 0;
    QVec x;
};

namespace lp_detail {

// Two-phase simplex with Bland's rule on exact rationals.
// Maximize c.y subject to A y = b, y >= 0.
// Objective rows are kept in the "-w + sum r_j y_j = r_rhs" convention, so a
// row's rhs entry is minus the current objective value and every pivot
// updates it exactly like a constraint row.
inline LpResult solve_standard(QMat a, QVec b, const QVec& c) {
    const size_t m = a.size();
    const size_t n = c.size();
    for (size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }
    }
    const size_t cols = n + m;  // original vars + one artificial per row
    QMat t(m, QVec(cols + 1, 0));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols] = b[i];
        basis[i] = n + i;
    }
    QVec r1(cols + 1, 0);  // phase 1: maximize -(sum of artificials)
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < m; ++i) r1[j] += t[i][j];
    for (size_t i = 0; i < m; ++i) r1[cols] += b[i];
    QVec r2(cols + 1, 0);  // phase 2 objective
    for (size_t j = 0; j < n; ++j) r2[j] = c[j];

    auto pivot = [&](size_t pr, size_t pc) {
        const Rational inv = 1 / t[pr][pc];
        for (auto& v : t[pr]) v *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == pr || t[i][pc] == 0) continue;
            const Rational f = t[i][pc];
            for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[pr][j];
        }
        for (QVec* row : {&r1, &r2}) {
            if ((*row)[pc] == 0) continue;
            const Rational f = (*row)[pc];
            for (size_t j = 0; j <= cols; ++j) (*row)[j] -= f * t[pr][j];
        }
        basis[pr] = pc;
    };

    auto run = [&](QVec& obj, size_t enter_limit) -> bool {
        for (;;) {
            size_t enter = cols;
            for (size_t j = 0; j < enter_limit; ++j)
                if (obj[j] > 0) { enter = j; break; }  // Bland: smallest index
            if (enter == cols) return true;            // optimal
            size_t leave = m;
            Rational best = 0;
            for (size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                const Rational ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;  // unbounded
            pivot(leave, enter);
        }
    };

    run(r1, cols);
    if (r1[cols] > 0) return {LpStatus::Infeasible, 0, {}};
    // Pivot leftover artificials out of the basis; rows that cannot be
    // pivoted are identically zero on the structural columns and stay inert.
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < m; ++i) {
            if (basis[i] < n) continue;
            for (size_t j = 0; j < n; ++j)
                if (t[i][j] != 0) {
                    pivot(i, j);
                    changed = true;
                    break;
                }
        }
    }
    if (!run(r2, n)) return {LpStatus::Unbounded, 0, {}};
    QVec y(n, 0);
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) y[basis[i]] = t[i][cols];
    return {LpStatus::Optimal, -r2[cols], y};
}

}  // namespace lp_detail

/// Maximize c.x over {A_ub x <= b_ub, A_eq x = b_eq} with x free.
inline LpResult lp_maximize(const QMat& a_ub, const QVec& b_ub,
                            const QMat& a_eq, const QVec& b_eq, const QVec& c) {
    const size_t n = c.size();
    const size_t mu = a_ub.size();
    const size_t me = a_eq.size();
    // y = [x+, x-, slack]
    QMat a(mu + me, QVec(2 * n + mu, 0));
    QVec b(mu + me);
    for (size_t i = 0; i < mu; ++i) {
        for (size_t j = 0; j < n; ++j) {
            a[i][j] = a_ub[i][j];
            a[i][n + j] = -a_ub[i][j];
        }
        a[i][2 * n + i] = 1;
        b[i] = b_ub[i];
    }
    for (size_t i = 0; i < me; ++i) {
        for (size_t j = 0; j < n; ++j) {
            a[mu + i][j] = a_eq[i][j];
            a[mu + i][n + j] = -a_eq[i][j];
        }
        b[mu + i] = b_eq[i];
    }
    QVec cy(2 * n + mu, 0);
    for (size_t j = 0; j < n; ++j) { cy[j] = c[j]; cy[n + j] = -c[j]; }
    LpResult res = lp_detail::solve_standard(std::move(a), std::move(b), cy);
    if (res.status != LpStatus::Optimal) return res;
    QVec x(n);
    for (size_t j = 0; j < n; ++j) x[j] = res.x[j] - res.x[n + j];
    res.x = std::move(x);
    return res;
}

/// Feasibility of {A y = b, y >= 0}.
inline bool lp_standard_feasible(const QMat& a, const QVec& b) {
    QVec c(a.empty() ? 0 : a[0].size(), 0);
    return lp_detail::solve_standard(a, b, c).status == LpStatus::Optimal;
}

}  // namespace toric
