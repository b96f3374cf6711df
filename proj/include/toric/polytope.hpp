#pragma once

#include "toric/linalg.hpp"
#include "toric/lp.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toric {

/// One half-space <x, conormal> + offset >= 0.  Conormals point inward.
struct Facet {
    ZVec conormal;
    Rational offset;

    friend bool operator==(const Facet& a, const Facet& b) {
        return a.conormal == b.conormal && a.offset == b.offset;
    }
};

inline bool facet_less(const Facet& a, const Facet& b) {
    if (a.conormal != b.conormal) return a.conormal < b.conormal;
    return a.offset < b.offset;
}

/// Rational polytope in H-representation.  The H-representation is the
/// canonical data; vertices are derived on demand and cached.  Instances are
/// immutable after construction and safe to share across threads.
class DelzantPolytope {
public:
    DelzantPolytope() = default;
    DelzantPolytope(size_t dim, std::vector<Facet> facets, std::string label)
        : dim_(dim), facets_(std::move(facets)), label_(std::move(label)),
          cache_(std::make_shared<Cache>()) {
        for (const auto& f : facets_) {
            if (f.conormal.size() != dim_)
                throw ParseError("facet conormal has wrong dimension in \"" + label_ + "\"");
            if (is_zero(f.conormal))
                throw ParseError("zero facet conormal in \"" + label_ + "\"");
        }
    }

    size_t dim() const { return dim_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::string& label() const { return label_; }

    /// <x, conormal_j> + offset_j; nonnegative iff x is on the inner side.
    Rational support(size_t j, const QVec& x) const {
        return dot(facets_[j].conormal, x) + facets_[j].offset;
    }

    bool contains(const QVec& x) const {
        for (size_t j = 0; j < facets_.size(); ++j)
            if (support(j, x) < 0) return false;
        return true;
    }

    bool strictly_contains(const QVec& x) const {
        for (size_t j = 0; j < facets_.size(); ++j)
            if (support(j, x) <= 0) return false;
        return true;
    }

    /// Deduplicated, lexicographically sorted vertex list.
    /// Throws UnboundedPolytope / EmptyPolytope.
    const std::vector<QVec>& vertices() const;

private:
    size_t dim_ = 0;
    std::vector<Facet> facets_;
    std::string label_;

    struct Cache {
        std::once_flag once;
        std::vector<QVec> verts;
        std::exception_ptr err;
    };
    std::shared_ptr<Cache> cache_;
};

namespace detail {

inline void for_each_combination(size_t m, size_t k,
                                 const std::function<void(const std::vector<size_t>&)>& fn) {
    if (k > m) return;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + m - k) break;
            if (i == 0) return;
        }
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Basic feasible points of {ineq >= 0, eq = 0}; assumes a bounded system.
inline std::vector<QVec> basic_feasible_points(const QMat& ineq, const QVec& ineq_off,
                                               const QMat& eq, const QVec& eq_off,
                                               size_t n) {
    std::vector<QVec> points;
    const size_t re = eq.empty() ? 0 : qmat_rank(eq);
    if (re > n) return points;
    const size_t pick = n - re;
    for_each_combination(ineq.size(), pick, [&](const std::vector<size_t>& idx) {
        QMat rows = eq;
        QVec rhs;
        for (const auto& r : eq_off) rhs.push_back(-r);
        for (size_t i : idx) {
            rows.push_back(ineq[i]);
            rhs.push_back(-ineq_off[i]);
        }
        auto x = solve_unique(rows, rhs);
        if (!x) return;
        for (size_t j = 0; j < ineq.size(); ++j)
            if (dot(ineq[j], *x) + ineq_off[j] < 0) return;
        points.push_back(std::move(*x));
    });
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

inline QMat conormal_rows(const DelzantPolytope& p) {
    QMat rows;
    rows.reserve(p.facets().size());
    for (const auto& f : p.facets()) rows.push_back(to_qvec(f.conormal));
    return rows;
}

inline QVec offsets(const DelzantPolytope& p) {
    QVec out;
    out.reserve(p.facets().size());
    for (const auto& f : p.facets()) out.push_back(f.offset);
    return out;
}

}  // namespace detail

/// Boundedness certificate: the conormals positively span R^n, checked by the
/// rank condition plus the exact LP {sum y_j xi_j = 0, y >= 1}.
inline bool is_bounded(const DelzantPolytope& p) {
    const size_t n = p.dim();
    QMat cols(n, QVec(p.facets().size(), 0));
    QVec rhs(n, 0);
    for (size_t j = 0; j < p.facets().size(); ++j)
        for (size_t i = 0; i < n; ++i) {
            cols[i][j] = Rational(p.facets()[j].conormal[i]);
            rhs[i] -= Rational(p.facets()[j].conormal[i]);
        }
    if (qmat_rank(cols) < n) return false;
    return lp_standard_feasible(cols, rhs);  // y = 1 + u, u >= 0
}

inline const std::vector<QVec>& DelzantPolytope::vertices() const {
    if (!cache_) throw Error("default-constructed polytope");
    std::call_once(cache_->once, [this] {
        try {
            if (!is_bounded(*this))
                throw UnboundedPolytope("polytope \"" + label_ + "\" has a recession direction");
            auto pts = detail::basic_feasible_points(detail::conormal_rows(*this),
                                                     detail::offsets(*this), {}, {}, dim_);
            if (pts.empty())
                throw EmptyPolytope("polytope \"" + label_ + "\" is infeasible");
            cache_->verts = std::move(pts);
        } catch (...) {
            cache_->err = std::current_exception();
        }
    });
    if (cache_->err) std::rethrow_exception(cache_->err);
    return cache_->verts;
}

/// A face described by its tight facet set, with an integer basis of the
/// lattice of directions along the face.
struct Face {
    std::vector<size_t> tight_facets;
    size_t dim = 0;
    IMat direction_lattice;  // rows
};

inline std::vector<size_t> tight_set(const DelzantPolytope& p, const QVec& x) {
    std::vector<size_t> tight;
    for (size_t j = 0; j < p.facets().size(); ++j)
        if (p.support(j, x) == 0) tight.push_back(j);
    return tight;
}

inline Face face_of(const DelzantPolytope& p, const QVec& x) {
    for (size_t j = 0; j < p.facets().size(); ++j)
        if (p.support(j, x) < 0)
            throw PointOutside("point " + vec_str(x) + " violates facet " + std::to_string(j) +
                               " of \"" + p.label() + "\"");
    Face f;
    f.tight_facets = tight_set(p, x);
    IMat rows;
    for (size_t j : f.tight_facets) rows.push_back(p.facets()[j].conormal);
    f.dim = p.dim() - (rows.empty() ? 0 : imat_rank(rows));
    f.direction_lattice = int_kernel_basis(rows, p.dim());
    return f;
}

struct DelzantReport {
    bool delzant = false;
    std::optional<QVec> offending_vertex;
    std::string reason;
};

/// True iff every vertex has exactly n tight facets whose conormals form a
/// lattice basis (determinant +-1).  Requires a bounded nonempty polytope.
inline DelzantReport is_delzant(const DelzantPolytope& p) {
    for (size_t j = 0; j < p.facets().size(); ++j)
        if (vec_gcd(p.facets()[j].conormal) != 1)
            return {false, std::nullopt,
                    "facet " + std::to_string(j) + " has a non-primitive conormal"};
    for (const auto& v : p.vertices()) {
        const auto tight = tight_set(p, v);
        if (tight.size() != p.dim())
            return {false, v, "vertex with " + std::to_string(tight.size()) +
                                  " tight facets (expected " + std::to_string(p.dim()) + ")"};
        IMat rows;
        for (size_t j : tight) rows.push_back(p.facets()[j].conormal);
        const Int d = imat_det(rows);
        if (d != 1 && d != -1)
            return {false, v, "vertex conormal determinant " + d.str()};
    }
    return {true, std::nullopt, ""};
}

/// Facet j is redundant iff dropping it leaves the feasible set unchanged.
inline bool facet_redundant(const DelzantPolytope& p, size_t j) {
    QMat a_ub;
    QVec b_ub;
    for (size_t i = 0; i < p.facets().size(); ++i) {
        if (i == j) continue;
        QVec row = to_qvec(p.facets()[i].conormal);
        for (auto& v : row) v = -v;
        a_ub.push_back(std::move(row));
        b_ub.push_back(p.facets()[i].offset);
    }
    QVec c = to_qvec(neg(p.facets()[j].conormal));
    const LpResult res = lp_maximize(a_ub, b_ub, {}, {}, c);
    if (res.status == LpStatus::Unbounded) return false;
    if (res.status == LpStatus::Infeasible) return true;  // others already empty
    return res.value <= p.facets()[j].offset;
}

/// Full type-invariant check: bounded, nonempty, full-dimensional, no
/// redundant inequality, and Delzant at every vertex.  Constructors run this.
inline void validate_delzant(const DelzantPolytope& p) {
    const auto& verts = p.vertices();  // throws on unbounded/empty
    QMat diffs;
    for (size_t i = 1; i < verts.size(); ++i) diffs.push_back(sub(verts[i], verts[0]));
    if (diffs.empty() || qmat_rank(diffs) < p.dim())
        throw Error("polytope \"" + p.label() + "\" is not full-dimensional");
    for (size_t j = 0; j < p.facets().size(); ++j)
        if (facet_redundant(p, j))
            throw Error("facet " + std::to_string(j) + " of \"" + p.label() + "\" is redundant");
    const auto rep = is_delzant(p);
    if (!rep.delzant)
        throw Error("polytope \"" + p.label() + "\" is not Delzant: " + rep.reason);
}

/// Sorted/deduplicated copy; the canonical form used for equality and
/// serialization.
inline DelzantPolytope canonical(const DelzantPolytope& p) {
    auto fs = p.facets();
    std::sort(fs.begin(), fs.end(), facet_less);
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    return DelzantPolytope(p.dim(), std::move(fs), p.label());
}

inline QVec interior_point(const DelzantPolytope& p) {
    const auto& verts = p.vertices();
    QVec acc(p.dim(), 0);
    for (const auto& v : verts) acc = add(acc, v);
    return scale(Rational(1, verts.size()), acc);
}

/// Image of the polytope under x -> A x + t with A in GL(n, Z).
inline DelzantPolytope transform(const DelzantPolytope& p, const IMat& a, const QVec& t,
                                 const std::string& label = "") {
    const IMat ainv = imat_inverse_unimodular(a);
    const IMat ainv_t = imat_transpose(ainv);
    std::vector<Facet> fs;
    fs.reserve(p.facets().size());
    for (const auto& f : p.facets()) {
        ZVec eta = imat_vec(ainv_t, f.conormal);
        Rational off = f.offset - dot(eta, t);
        fs.push_back({std::move(eta), std::move(off)});
    }
    return DelzantPolytope(p.dim(), std::move(fs),
                           label.empty() ? p.label() + " (transformed)" : label);
}

// ---------------------------------------------------------------------------
// Standard families.

/// Simplex {x_i >= 0, sum x_i <= scale}.
inline DelzantPolytope simplex_cpn(size_t n, const Rational& scale = 1) {
    if (n < 1) throw ParameterOutOfRange("simplex: need n >= 1");
    if (scale <= 0) throw ParameterOutOfRange("simplex: need scale > 0");
    std::vector<Facet> fs;
    for (size_t i = 0; i < n; ++i) {
        ZVec e(n, 0);
        e[i] = 1;
        fs.push_back({std::move(e), 0});
    }
    fs.push_back({ZVec(n, -1), scale});
    DelzantPolytope p(n, std::move(fs),
                      "cpn(n=" + std::to_string(n) + ",scale=" + rational_str(scale) + ")");
    validate_delzant(p);
    return p;
}

/// Simplex blown up along a k-dimensional face:
/// {x_i >= 0, sum x_i <= 1, sum_{i>k} x_i >= lambda}.
inline DelzantPolytope blowup_face(size_t n, size_t k, const Rational& lambda) {
    if (n < 2 || k > n - 2)
        throw ParameterOutOfRange("blowup_face: need n >= 2 and 0 <= k <= n-2");
    if (!(lambda > 0 && lambda < 1))
        throw ParameterOutOfRange("blowup_face: need 0 < lambda < 1, got lambda=" +
                                  rational_str(lambda));
    std::vector<Facet> fs;
    for (size_t i = 0; i < n; ++i) {
        ZVec e(n, 0);
        e[i] = 1;
        fs.push_back({std::move(e), 0});
    }
    fs.push_back({ZVec(n, -1), 1});
    ZVec blow(n, 0);
    for (size_t i = k; i < n; ++i) blow[i] = 1;
    fs.push_back({std::move(blow), -lambda});
    DelzantPolytope p(n, std::move(fs),
                      "blowup_face(n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                          ",lam=" + rational_str(lambda) + ")");
    validate_delzant(p);
    return p;
}

/// The two-step blowup family
/// {x_j >= 0, sum x_j <= 1, sum x_j >= (n-1) alpha, sum_{j>=2} x_j <= n alpha}.
inline DelzantPolytope double_blowup(size_t n, const Rational& alpha) {
    if (n < 2) throw ParameterOutOfRange("double_blowup: need n >= 2");
    if (!(alpha > 0 && alpha < Rational(1, n + 1)))
        throw ParameterOutOfRange("double_blowup: need 0 < alpha < 1/(n+1), got alpha=" +
                                  rational_str(alpha));
    std::vector<Facet> fs;
    for (size_t i = 0; i < n; ++i) {
        ZVec e(n, 0);
        e[i] = 1;
        fs.push_back({std::move(e), 0});
    }
    fs.push_back({ZVec(n, -1), 1});
    fs.push_back({ZVec(n, 1), -Rational(n - 1) * alpha});
    ZVec top(n, -1);
    top[0] = 0;
    fs.push_back({std::move(top), Rational(n) * alpha});
    DelzantPolytope p(n, std::move(fs),
                      "double_blowup(n=" + std::to_string(n) + ",alpha=" + rational_str(alpha) + ")");
    validate_delzant(p);
    return p;
}

/// Hirzebruch trapezoid {x >= 0, 0 <= y <= b, x + k y <= a + k b}.
inline DelzantPolytope hirzebruch(long k, const Rational& a = 1, const Rational& b = 1) {
    if (k < 0) throw ParameterOutOfRange("hirzebruch: need k >= 0");
    if (a <= 0 || b <= 0) throw ParameterOutOfRange("hirzebruch: need sizes a, b > 0");
    std::vector<Facet> fs;
    fs.push_back({{1, 0}, 0});
    fs.push_back({{0, 1}, 0});
    fs.push_back({{0, -1}, b});
    fs.push_back({{-1, -k}, a + k * b});
    DelzantPolytope p(2, std::move(fs),
                      "hirzebruch(k=" + std::to_string(k) + ",a=" + rational_str(a) +
                          ",b=" + rational_str(b) + ")");
    validate_delzant(p);
    return p;
}

/// Scaled point-blowup of the simplex with coordinates 2..n shifted down by
/// lambda: {x_1 >= 0, x_j + lambda >= 0, sum x_j <= C, sum x_j >= (n-1) alpha}.
/// The closed range 0 <= lambda <= (1-(n+1)alpha)/2 is accepted; both
/// endpoints still give valid polytopes (the degeneration they cause shows up
/// later, as a non-regular slice).
inline DelzantPolytope shifted_x0_blowup(size_t n, const Rational& alpha,
                                         const Rational& lambda, const Rational& big_c = 2) {
    if (n < 2) throw ParameterOutOfRange("shifted_x0_blowup: need n >= 2");
    if (!(alpha > 0 && alpha < Rational(1, n + 1)))
        throw ParameterOutOfRange("shifted_x0_blowup: need 0 < alpha < 1/(n+1), got alpha=" +
                                  rational_str(alpha));
    const Rational hi = (1 - Rational(n + 1) * alpha) / 2;
    if (!(lambda >= 0 && lambda <= hi))
        throw ParameterOutOfRange("shifted_x0_blowup: need 0 <= lambda <= (1-(n+1)alpha)/2 = " +
                                  rational_str(hi) + ", got lambda=" + rational_str(lambda));
    if (!(big_c > Rational(n - 1) * (alpha + lambda)))
        throw ParameterOutOfRange("shifted_x0_blowup: need C > (n-1)(alpha+lambda) = " +
                                  rational_str(Rational(n - 1) * (alpha + lambda)));
    std::vector<Facet> fs;
    for (size_t i = 0; i < n; ++i) {
        ZVec e(n, 0);
        e[i] = 1;
        fs.push_back({std::move(e), i == 0 ? Rational(0) : lambda});
    }
    fs.push_back({ZVec(n, -1), big_c});
    fs.push_back({ZVec(n, 1), -Rational(n - 1) * alpha});
    DelzantPolytope p(n, std::move(fs),
                      "shifted_x0_blowup(n=" + std::to_string(n) + ",alpha=" + rational_str(alpha) +
                          ",lam=" + rational_str(lambda) + ",C=" + rational_str(big_c) + ")");
    validate_delzant(p);
    return p;
}

inline DelzantPolytope interval(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw ParameterOutOfRange("interval: need lo < hi");
    std::vector<Facet> fs;
    fs.push_back({{1}, -lo});
    fs.push_back({{-1}, hi});
    DelzantPolytope p(1, std::move(fs),
                      "interval[" + rational_str(lo) + "," + rational_str(hi) + "]");
    validate_delzant(p);
    return p;
}

inline DelzantPolytope product(const DelzantPolytope& a, const DelzantPolytope& b) {
    const size_t n = a.dim() + b.dim();
    std::vector<Facet> fs;
    for (const auto& f : a.facets()) {
        ZVec c(n, 0);
        for (size_t i = 0; i < a.dim(); ++i) c[i] = f.conormal[i];
        fs.push_back({std::move(c), f.offset});
    }
    for (const auto& f : b.facets()) {
        ZVec c(n, 0);
        for (size_t i = 0; i < b.dim(); ++i) c[a.dim() + i] = f.conormal[i];
        fs.push_back({std::move(c), f.offset});
    }
    return DelzantPolytope(n, std::move(fs), a.label() + " x " + b.label());
}

}  // namespace toric
