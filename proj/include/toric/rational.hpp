#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

// Exact scalars used throughout the core.  No floating point leaves
// numeric_oracle.hpp.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using QVec = std::vector<Rational>;
using ZVec = std::vector<Int>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct UnboundedPolytope : Error { using Error::Error; };
struct EmptyPolytope : Error { using Error::Error; };
struct PointOutside : Error { using Error::Error; };
struct PointNotInterior : Error { using Error::Error; };
struct InvalidProbe : Error { using Error::Error; };
struct ZeroPolynomial : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct EmptySlice : Error { using Error::Error; };
struct IrregularLevel : Error { using Error::Error; };
struct MismatchedReduction : Error { using Error::Error; };

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    return Rational(num, den);
}

inline Rational rational_of(long long n) { return Rational(n); }

/// Formats in the canonical "p/q" interchange form (q > 0, lowest terms).
inline std::string rational_str(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Accepts "p" or "p/q"; q may be signed, result is canonicalized.
inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("cannot parse rational from \"" + s + "\"");
    }
}

inline std::string vec_str(const QVec& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += rational_str(v[i]);
    }
    return out + ")";
}

inline Rational dot(const QVec& a, const QVec& b) {
    Rational acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rational dot(const ZVec& a, const QVec& b) {
    Rational acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += Rational(a[i]) * b[i];
    return acc;
}

inline Int dot(const ZVec& a, const ZVec& b) {
    Int acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Int vec_gcd(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

inline bool is_zero(const ZVec& v) {
    for (const auto& x : v) if (x != 0) return false;
    return true;
}

inline ZVec neg(const ZVec& v) {
    ZVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

inline QVec add(const QVec& a, const QVec& b) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline QVec sub(const QVec& a, const QVec& b) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline QVec scale(const Rational& c, const QVec& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

inline QVec to_qvec(const ZVec& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

}  // namespace toric
