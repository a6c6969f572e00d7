#pragma once

#include <map>
#include <string>
#include <vector>

#include "mft/kontsevich.hpp"
#include "mft/laurent.hpp"

namespace mft {

// Polynomial in the boundary variables (non-negative exponents) with
// MomentPolynomial coefficients.
struct ZPoly {
    std::vector<std::string> vars;
    std::map<std::vector<int>, MomentPolynomial> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(std::vector<int> e, const MomentPolynomial& c);
    ZPoly aligned(const std::vector<std::string>& nv) const;
};

ZPoly zp_zero(std::vector<std::string> vars);
ZPoly zp_const(std::vector<std::string> vars, const Rational& c);
ZPoly zp_monomial(std::vector<std::string> vars, std::vector<int> e, MomentPolynomial c);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
ZPoly zp_derivative(const ZPoly& a, const std::string& var);

// Rational function num/den in the boundary variables, carrying one
// overall lambda power. Denominators are never reduced; the zero test
// only inspects the numerator, which is exact.
struct MultiRational {
    ZPoly num;
    ZPoly den;
    long lambda_exp = 0;

    bool is_zero() const { return num.is_zero(); }
};

MultiRational mr_from_laurent(const LaurentExpr& e);
// the unstable two-boundary seed as a closed form in (a, b)
MultiRational mr_g0b2(const std::string& a, const std::string& b);
MultiRational mr_add(const MultiRational& x, const MultiRational& y);
MultiRational mr_mul(const MultiRational& x, const MultiRational& y);
MultiRational mr_scale(const MultiRational& x, const Rational& c, long dlambda = 0);
MultiRational mr_div_poly(const MultiRational& x, const ZPoly& d);
MultiRational mr_derivative(const MultiRational& x, const std::string& var);

// Residual of the complexified loop equation for the (g,b) correlation
// function; identically zero exactly when the solution satisfies it.
MultiRational loop_equation_residual(int g, int b);

} // namespace mft
