#pragma once

#include "toric/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace toric {

/// Finite-support element of the generalized Laurent series field in s:
/// a finite sum of rational-coefficient monomials c * s^lambda with rational
/// exponents lambda.  Stored sparsely; zero coefficients are never kept.
class SPoly {
public:
    SPoly() = default;

    static SPoly monomial(const Rational& coeff, const Rational& exponent) {
        SPoly p;
        if (coeff != 0) p.terms_[exponent] = coeff;
        return p;
    }
    static SPoly constant(const Rational& c) { return monomial(c, 0); }
    static SPoly s_power(const Rational& exponent) { return monomial(1, exponent); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Rational, Rational>& terms() const { return terms_; }

    /// Smallest exponent of the support; nullopt for the zero element.
    std::optional<Rational> min_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    /// The non-Archimedean valuation -min(support); nullopt encodes -infinity
    /// (the value on 0), deliberately kept out of ordinary arithmetic.
    std::optional<Rational> valuation() const {
        auto m = min_exponent();
        if (!m) return std::nullopt;
        return -*m;
    }

    SPoly operator-() const {
        SPoly out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    SPoly& operator+=(const SPoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_[e] = c;
            } else {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    friend SPoly operator+(SPoly lhs, const SPoly& rhs) { return lhs += rhs; }
    friend SPoly operator-(SPoly lhs, const SPoly& rhs) { return lhs += -rhs; }

    friend SPoly operator*(const SPoly& lhs, const SPoly& rhs) {
        SPoly out;
        for (const auto& [ea, ca] : lhs.terms_)
            for (const auto& [eb, cb] : rhs.terms_) {
                const Rational e = ea + eb;
                auto it = out.terms_.find(e);
                if (it == out.terms_.end()) {
                    out.terms_[e] = ca * cb;
                } else {
                    it->second += ca * cb;
                    if (it->second == 0) out.terms_.erase(it);
                }
            }
        return out;
    }

    SPoly pow(unsigned k) const {
        SPoly out = constant(1);
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    friend bool operator==(const SPoly& a, const SPoly& b) { return a.terms_ == b.terms_; }

private:
    std::map<Rational, Rational> terms_;
};

/// Univariate polynomial in z with SPoly coefficients.  Negative degrees are
/// allowed at construction; normalize() clears them by multiplying with a
/// power of z.
class ZPoly {
public:
    ZPoly() = default;

    static ZPoly z_monomial(long degree, SPoly coeff = SPoly::constant(1)) {
        ZPoly p;
        p.add(degree, std::move(coeff));
        return p;
    }

    void add(long degree, const SPoly& coeff) {
        if (coeff.is_zero()) return;
        auto it = coeffs_.find(degree);
        if (it == coeffs_.end()) {
            coeffs_[degree] = coeff;
        } else {
            it->second += coeff;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<long, SPoly>& coeffs() const { return coeffs_; }
    long min_degree() const { return coeffs_.begin()->first; }
    long degree() const { return coeffs_.rbegin()->first; }

    /// Multiplies by z^{-min degree} so the constant term is nonzero.
    ZPoly normalized() const {
        if (coeffs_.empty()) return {};
        ZPoly out;
        const long shift = min_degree();
        for (const auto& [d, c] : coeffs_) out.coeffs_[d - shift] = c;
        return out;
    }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        ZPoly out = a;
        for (const auto& [d, c] : b.coeffs_) out.add(d, c);
        return out;
    }

    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        ZPoly out = a;
        for (const auto& [d, c] : b.coeffs_) out.add(d, -c);
        return out;
    }

    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        ZPoly out;
        for (const auto& [da, ca] : a.coeffs_)
            for (const auto& [db, cb] : b.coeffs_) out.add(da + db, ca * cb);
        return out;
    }

    ZPoly pow(unsigned k) const {
        ZPoly out = z_monomial(0);
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::map<long, SPoly> coeffs_;
};

/// Lower convex hull of {(degree, min support exponent of the coefficient)}.
/// Hull slopes are strictly increasing; an edge of horizontal length l and
/// slope sigma accounts for l roots whose leading exponent is -sigma.
struct NewtonPolygon {
    struct Edge {
        long i1;
        Rational m1;
        long i2;
        Rational m2;
        Rational slope;
        long length;
    };
    std::vector<std::pair<long, Rational>> points;
    std::vector<Edge> hull;
};

inline NewtonPolygon newton_polygon(const ZPoly& poly) {
    if (poly.is_zero()) throw ZeroPolynomial("newton polygon of the zero polynomial");
    const ZPoly p = poly.normalized();
    NewtonPolygon np;
    for (const auto& [d, c] : p.coeffs()) np.points.emplace_back(d, *c.min_exponent());

    // monotone chain, collinear middle points dropped so slopes increase strictly
    std::vector<std::pair<long, Rational>> hull;
    for (const auto& pt : np.points) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const Rational cross = Rational(b.first - a.first) * (pt.second - a.second) -
                                   (b.second - a.second) * Rational(pt.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        const auto& [i1, m1] = hull[i];
        const auto& [i2, m2] = hull[i + 1];
        np.hull.push_back({i1, m1, i2, m2, (m2 - m1) / Rational(i2 - i1), i2 - i1});
    }
    return np;
}

/// Root leading exponents with multiplicities, ascending.  The reported value
/// v is the smallest exponent in the support of the root, i.e. v = -nu(root);
/// multiplicities add up to deg - ord_0.
inline std::vector<std::pair<Rational, long>> root_valuations(const ZPoly& poly) {
    const NewtonPolygon np = newton_polygon(poly);
    std::vector<std::pair<Rational, long>> out;
    for (const auto& e : np.hull) out.emplace_back(-e.slope, e.length);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace toric
