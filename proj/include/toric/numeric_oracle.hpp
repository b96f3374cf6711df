#pragma once

// Floating-point cross-check for the Newton-polygon solver.  This is the only
// header in the library that touches doubles; nothing here feeds back into
// the exact path.

#include "toric/series.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace toric {

struct NumericValuation {
    Rational value;       // snapped to a small-denominator rational
    long multiplicity;
    double residual;      // |estimate - value|
};

namespace detail {

inline double to_double(const Rational& q) {
    return numerator(q).convert_to<double>() / denominator(q).convert_to<double>();
}

/// Best rational approximation with denominator <= bound (continued fraction).
inline Rational snap_to_rational(double x, long bound) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(v);
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > bound || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = v - fl;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    return Rational(p1, q1);
}

/// Root moduli of a polynomial given as (sign, log|coeff|) per degree.  The
/// dynamic range of the coefficients is far beyond double roots-of-companion
/// accuracy, so the roots are computed one tropical magnitude class at a
/// time: the upper hull of (i, log|c_i|) predicts |root| ~ tau per hull edge,
/// and substituting z = tau w moves that class to |w| ~ 1 where the
/// companion-matrix eigenvalues are reliable.
inline std::vector<double> tropical_root_moduli(const std::vector<std::pair<double, double>>& coeff,
                                                const std::vector<long>& degs) {
    // upper hull of (deg, log|c|)
    std::vector<size_t> hull;
    for (size_t k = 0; k < degs.size(); ++k) {
        while (hull.size() >= 2) {
            const size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const double cross =
                static_cast<double>(degs[b] - degs[a]) * (coeff[k].second - coeff[a].second) -
                (coeff[b].second - coeff[a].second) * static_cast<double>(degs[k] - degs[a]);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    std::vector<double> moduli;
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        const size_t a = hull[e], b = hull[e + 1];
        const long count = degs[b] - degs[a];
        const double log_tau = -(coeff[b].second - coeff[a].second) / static_cast<double>(count);
        // rescaled coefficients q_i = c_i tau^i, normalized to max 1
        const long dmin = degs.front(), dmax = degs.back();
        std::vector<double> logq(static_cast<size_t>(dmax - dmin) + 1,
                                 -std::numeric_limits<double>::infinity());
        std::vector<double> sign(logq.size(), 0);
        double mx = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < degs.size(); ++k) {
            const size_t slot = static_cast<size_t>(degs[k] - dmin);
            logq[slot] = coeff[k].second + static_cast<double>(degs[k]) * log_tau;
            sign[slot] = coeff[k].first;
            mx = std::max(mx, logq[slot]);
        }
        std::vector<double> q(logq.size(), 0);
        for (size_t i = 0; i < logq.size(); ++i)
            if (std::isfinite(logq[i])) q[i] = sign[i] * std::exp(logq[i] - mx);
        // coefficients far below the class scale belong to other tropical
        // classes; keeping them would wreck the companion matrix conditioning
        for (auto& v : q)
            if (std::abs(v) < 1e-9) v = 0;
        // trim zeros at both ends
        size_t lo = 0, hi = q.size() - 1;
        while (lo < hi && q[lo] == 0) ++lo;
        while (hi > lo && q[hi] == 0) --hi;
        const size_t deg = hi - lo;
        if (deg == 0) throw IllConditioned("tropical class rescaling collapsed the polynomial");
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<long>(deg),
                                                          static_cast<long>(deg));
        for (size_t i = 0; i < deg; ++i) {
            if (i + 1 < deg) companion(static_cast<long>(i) + 1, static_cast<long>(i)) = 1.0;
            companion(static_cast<long>(i), static_cast<long>(deg) - 1) = -q[lo + i] / q[hi];
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        std::vector<double> w;
        for (long i = 0; i < static_cast<long>(deg); ++i)
            w.push_back(std::abs(solver.eigenvalues()(i)));
        // the `count` roots nearest |w| = 1 belong to this magnitude class
        std::sort(w.begin(), w.end(), [](double x, double y) {
            return std::abs(std::log(x)) < std::abs(std::log(y));
        });
        if (static_cast<long>(w.size()) < count)
            throw IllConditioned("tropical class lost roots to underflow");
        for (long i = 0; i < count; ++i) moduli.push_back(w[static_cast<size_t>(i)] * std::exp(log_tau));
    }
    std::sort(moduli.rbegin(), moduli.rend());
    return moduli;
}

inline std::vector<double> root_moduli_at(const ZPoly& p, double log_s) {
    std::vector<std::pair<double, double>> coeff;  // (sign, log|c_i(s)|)
    std::vector<long> degs;
    for (const auto& [d, c] : p.coeffs()) {
        // evaluate the s-series in log space around its dominant monomial
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [e, q] : c.terms())
            best = std::max(best, std::log(std::abs(to_double(q))) + to_double(e) * log_s);
        double acc = 0;
        for (const auto& [e, q] : c.terms())
            acc += to_double(q) * std::exp(to_double(e) * log_s - best);
        if (acc == 0) throw IllConditioned("coefficient cancelled numerically");
        coeff.emplace_back(acc < 0 ? -1.0 : 1.0, std::log(std::abs(acc)) + best);
        degs.push_back(d);
    }
    return tropical_root_moduli(coeff, degs);
}

}  // namespace detail

/// Substitutes two small numeric values of s, solves for the complex roots,
/// and reads the valuations off the decay rate of the root moduli.  Pure
/// floating point; used only to cross-check root_valuations.
inline std::vector<NumericValuation> numeric_valuation_oracle(const ZPoly& poly,
                                                              const Rational& eps1,
                                                              const Rational& eps2,
                                                              long snap_denominator = 1024) {
    if (poly.is_zero()) throw ZeroPolynomial("numeric oracle on the zero polynomial");
    if (!(eps1 > 0 && eps2 > 0 && eps1 != eps2))
        throw ParameterOutOfRange("numeric oracle: need two distinct positive epsilons");
    const ZPoly p = poly.normalized();

    // common denominator of all s-exponents, so s = eps^d has integer powers
    Int d = 1;
    for (const auto& [deg, c] : p.coeffs())
        for (const auto& [e, q] : c.terms())
            d = boost::multiprecision::lcm(d, denominator(e));
    const double dd = d.convert_to<double>();
    const double log_s1 = dd * std::log(detail::to_double(eps1));
    const double log_s2 = dd * std::log(detail::to_double(eps2));

    const auto m1 = detail::root_moduli_at(p, log_s1);
    const auto m2 = detail::root_moduli_at(p, log_s2);
    if (m1.size() != m2.size()) throw IllConditioned("root counts disagree across epsilons");

    const double logratio = log_s1 - log_s2;
    std::vector<double> estimates;
    for (size_t i = 0; i < m1.size(); ++i) {
        if (!(m1[i] > 0) || !(m2[i] > 0))
            throw IllConditioned("numeric root collapsed to zero");
        estimates.push_back((std::log(m1[i]) - std::log(m2[i])) / logratio);
    }
    std::sort(estimates.begin(), estimates.end());

    std::vector<NumericValuation> out;
    size_t i = 0;
    while (i < estimates.size()) {
        size_t j = i;
        while (j + 1 < estimates.size() && estimates[j + 1] - estimates[j] < 5e-4) ++j;
        double mean = 0;
        for (size_t k = i; k <= j; ++k) mean += estimates[k];
        mean /= static_cast<double>(j - i + 1);
        if (estimates[j] - estimates[i] > 1e-3)
            throw IllConditioned("valuation cluster spread exceeds tolerance");
        const Rational snapped = detail::snap_to_rational(mean, snap_denominator);
        const double residual = std::abs(mean - detail::to_double(snapped));
        if (residual > 1e-3)
            throw IllConditioned("cluster mean is not close to a small rational");
        out.push_back({snapped, static_cast<long>(j - i + 1), residual});
        i = j + 1;
    }
    return out;
}

}  // namespace toric
