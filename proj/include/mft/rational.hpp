#pragma once

#include <gmpxx.h>

#include <string>

#include "mft/errors.hpp"

namespace mft {

// Exact rational numbers. Backed by GMP; every value is kept canonical
// (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// "p/q", or just "p" when q == 1.
inline std::string rat_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw DomainError("unparseable rational: " + s);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace mft
