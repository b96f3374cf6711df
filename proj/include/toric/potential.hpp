#pragma once

#include "toric/polytope.hpp"
#include "toric/series.hpp"

#include <algorithm>
#include <vector>

namespace toric {

/// Landau-Ginzburg superpotential sum_j s^{a_j} y^{xi^j}, one monomial per
/// facet of the source polytope, in facet order.
struct Superpotential {
    size_t vars = 0;
    std::vector<std::pair<Rational, ZVec>> terms;  // (offset a_j, exponent xi^j)
};

inline Superpotential superpotential(const DelzantPolytope& p) {
    Superpotential w;
    w.vars = p.dim();
    for (const auto& f : p.facets()) w.terms.emplace_back(f.offset, f.conormal);
    return w;
}

/// One Laurent monomial c * s^{s_exp} * y^{y_exp}.
struct LaurentTerm {
    Rational coeff;
    Rational s_exp;
    ZVec y_exp;

    friend bool operator==(const LaurentTerm& a, const LaurentTerm& b) {
        return a.coeff == b.coeff && a.s_exp == b.s_exp && a.y_exp == b.y_exp;
    }
};
using LaurentSum = std::vector<LaurentTerm>;

/// The relations y_i dW/dy_i = 0: equation i is sum_j xi^j_i s^{a_j} y^{xi^j}.
/// Like monomials are combined; zero terms dropped.
inline std::vector<LaurentSum> critical_system(const Superpotential& w) {
    std::vector<LaurentSum> eqs(w.vars);
    for (size_t i = 0; i < w.vars; ++i) {
        for (const auto& [a, xi] : w.terms) {
            if (xi[i] == 0) continue;
            LaurentTerm t{Rational(xi[i]), a, xi};
            bool merged = false;
            for (auto& existing : eqs[i]) {
                if (existing.s_exp == t.s_exp && existing.y_exp == t.y_exp) {
                    existing.coeff += t.coeff;
                    merged = true;
                    break;
                }
            }
            if (!merged) eqs[i].push_back(std::move(t));
        }
        eqs[i].erase(std::remove_if(eqs[i].begin(), eqs[i].end(),
                                    [](const LaurentTerm& t) { return t.coeff == 0; }),
                     eqs[i].end());
    }
    return eqs;
}

/// Critical-point data at valuation level: the candidate fiber coordinates
/// (-nu of the critical coordinates), with the multiplicity of the root class
/// that produced them.
struct ValuationVector {
    QVec values;
    long multiplicity = 0;
    bool degenerate = false;

    friend bool operator==(const ValuationVector& a, const ValuationVector& b) {
        return a.values == b.values && a.multiplicity == b.multiplicity &&
               a.degenerate == b.degenerate;
    }
};

/// The lambda at which the two critical classes of the face-blowup family
/// merge (the monotone case).
inline Rational monotone_threshold(size_t n, size_t k) {
    if (n < 2 || k > n - 2) throw ParameterOutOfRange("monotone_threshold: need 0 <= k <= n-2");
    return Rational(n - k - 1, n + 1);
}

/// Symmetric reduction of the face-blowup critical system to one variable:
/// z^{n-k} (z + s^{-lambda} z^{n-k})^{k+1} - s, built with exact series
/// arithmetic.
inline ZPoly blowup_critical_poly(size_t n, size_t k, const Rational& lambda) {
    if (n < 2 || k > n - 2)
        throw ParameterOutOfRange("blowup_critical_poly: need n >= 2 and 0 <= k <= n-2");
    if (!(lambda > 0 && lambda < 1))
        throw ParameterOutOfRange("blowup_critical_poly: need 0 < lambda < 1");
    const long nk = static_cast<long>(n - k);
    ZPoly inner = ZPoly::z_monomial(1);
    inner.add(nk, SPoly::s_power(-lambda));
    ZPoly p = inner.pow(static_cast<unsigned>(k + 1)) * ZPoly::z_monomial(nk);
    p.add(0, -SPoly::s_power(1));
    return p;
}

/// Critical classes of the face-blowup family.  Each z-root class of the
/// symmetric polynomial gives v(y) = (1 - (n-k) v(z))/(k+1) and the fiber
/// coordinates (v(y) x k, v(z) x (n-k)).  Below the monotone threshold there
/// are exactly two classes, above it one, and at the threshold the merged
/// class is flagged degenerate.  Classes are ordered by increasing v(z).
inline std::vector<ValuationVector> blowup_critical_valuations(size_t n, size_t k,
                                                               const Rational& lambda) {
    const auto roots = root_valuations(blowup_critical_poly(n, k, lambda));
    const bool at_threshold = (lambda == monotone_threshold(n, k));
    std::vector<ValuationVector> out;
    for (const auto& [vz, mult] : roots) {
        const Rational vy = (1 - Rational(n - k) * vz) / Rational(k + 1);
        ValuationVector vv;
        vv.values.assign(k, vy);
        vv.values.insert(vv.values.end(), n - k, vz);
        vv.multiplicity = mult;
        vv.degenerate = at_threshold;
        out.push_back(std::move(vv));
    }
    return out;
}

/// Clifford class of the scale-sigma simplex: the single root class of
/// z^{m+1} - s^sigma, placed at diag(sigma/(m+1)).
inline std::vector<ValuationVector> simplex_critical_valuations(size_t m, const Rational& scale) {
    if (m < 1 || scale <= 0)
        throw ParameterOutOfRange("simplex_critical_valuations: need m >= 1, scale > 0");
    ZPoly p = ZPoly::z_monomial(static_cast<long>(m) + 1);
    p.add(0, -SPoly::s_power(scale));
    std::vector<ValuationVector> out;
    for (const auto& [vz, mult] : root_valuations(p)) {
        ValuationVector vv;
        vv.values.assign(m, vz);
        vv.multiplicity = mult;
        out.push_back(std::move(vv));
    }
    return out;
}

/// Center class of an interval [lo, hi]: the root class of z^2 - s^{lo+hi}.
inline ValuationVector interval_center_valuation(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw ParameterOutOfRange("interval_center_valuation: need lo < hi");
    ZPoly p = ZPoly::z_monomial(2);
    p.add(0, -SPoly::s_power(lo + hi));
    const auto roots = root_valuations(p);
    ValuationVector vv;
    vv.values = {roots[0].first};
    vv.multiplicity = roots[0].second;
    return vv;
}

/// Critical classes of shifted_x0_blowup(n, alpha, lambda, C), transported
/// from the unit face-blowup family through the scale-by-C / shift-by-lambda
/// construction of that polytope.  Ordered with the blowup-adjacent class
/// first.
inline std::vector<ValuationVector> shifted_blowup_critical_valuations(size_t n,
                                                                       const Rational& alpha,
                                                                       const Rational& lambda,
                                                                       const Rational& big_c = 2) {
    const Rational lambda1 = Rational(n - 1) * (alpha + lambda) / big_c;
    if (!(lambda1 > 0))
        throw ParameterOutOfRange("shifted_blowup_critical_valuations: need alpha + lambda > 0");
    if (!(lambda1 < monotone_threshold(n, 0)))
        throw ParameterOutOfRange(
            "shifted_blowup_critical_valuations: need (n+1)(alpha+lambda) < C "
            "so the blowup stays small; increase C");
    auto classes = blowup_critical_valuations(n, 0, lambda1);
    for (auto& c : classes)
        for (size_t i = 0; i < c.values.size(); ++i) {
            c.values[i] *= big_c;
            if (i > 0) c.values[i] -= lambda;
        }
    return classes;
}

/// Concatenation of critical classes for product polytopes.
inline std::vector<ValuationVector> product_valuations(const std::vector<ValuationVector>& a,
                                                       const std::vector<ValuationVector>& b) {
    std::vector<ValuationVector> out;
    for (const auto& va : a)
        for (const auto& vb : b) {
            ValuationVector vv;
            vv.values = va.values;
            vv.values.insert(vv.values.end(), vb.values.begin(), vb.values.end());
            vv.multiplicity = va.multiplicity * vb.multiplicity;
            vv.degenerate = va.degenerate || vb.degenerate;
            out.push_back(std::move(vv));
        }
    return out;
}

}  // namespace toric
