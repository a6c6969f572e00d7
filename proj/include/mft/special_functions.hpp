#pragma once

#include <functional>

#include "mft/rational.hpp"

namespace mft {

// Dilogarithm Li2(x) for x <= 1.
double dilog(double x);

// Gauss hypergeometric 2F1(a,b;c;x) for real parameters and x <= 0.
// Arguments below -1 are reached through the Pfaff transformation.
double hyp2f1(double a, double b, double c, double x);

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_depth = 60;
    // half-line mapped to (0,1) via t = u/(1-u)
    const char* mapping = "rational_u_over_1mu";
};

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod on a finite interval.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureSpec& spec = {});

// Integral over [a, infinity).
QuadratureResult integrate_halfline(const std::function<double(double)>& f, double a = 0.0,
                                    const QuadratureSpec& spec = {});

Integer catalan_number(int n);
Integer double_factorial(int n);  // n!! with (-1)!! = 1
Integer binomial(long n, long k);
Integer factorial_int(int n);

} // namespace mft
