// Exact rational scalars. boost::multiprecision keeps everything header-only.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "solitonforge/errors.hpp"

namespace solitonforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

inline int sign(const Rat& q) { return q.sign(); }

// gcd on rationals: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d); gcd(q, 0) = |q|.
// Used for content extraction so polynomials can be scaled to coprime
// integer coefficients.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a.is_zero()) return b < 0 ? Rat(-b) : b;
    if (b.is_zero()) return a < 0 ? Rat(-a) : a;
    Int n = boost::multiprecision::gcd(rat_num(a), rat_num(b));
    Int d = boost::multiprecision::lcm(rat_den(a), rat_den(b));
    return Rat(n, d);
}

// Total order usable as a tie-breaker in canonical term orders.
inline int rat_cmp(const Rat& a, const Rat& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

// "7", "-3", "9/4" -> Rat. Throws InputError on anything else.
inline Rat rat_from_string(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d.is_zero()) throw InputError("rational literal with zero denominator: " + s);
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw InputError("not a rational literal: " + s);
    }
}

inline std::string to_string(const Rat& q) { return q.str(); }

} // namespace solitonforge
