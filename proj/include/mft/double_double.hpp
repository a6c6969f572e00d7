#pragma once

#include <cmath>

namespace mft {

// Twofold compensated arithmetic (error-free transformations with FMA).
// Used by the finite-matrix quartic evaluators when the preimage product
// formulas start losing digits.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    DD out = two_sum(s.hi, lo);
    return out;
}

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, {-b.hi, -b.lo}); }

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, lo);
}

inline DD dd_div(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul({q1, 0.0}, b));
    double q2 = r.value() / b.hi;
    return two_sum(q1, q2);
}

} // namespace mft
