#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mft/rational.hpp"

namespace mft {

// Exponent vector (e0, e1, ..., ek). Only e0 may be negative; trailing
// zeros are trimmed so equal monomials compare equal structurally.
using Exponents = std::vector<int>;

// Polynomial in the moment variables rho_0..rho_K with exact rational
// coefficients. rho_0 is the single variable allowed negative powers,
// so values of the form P(rho)/rho_0^m live here directly.
//
// The variable budget K is explicit: producing rho_{K+1} is an error,
// not a silent extension.
class MomentPolynomial {
public:
    MomentPolynomial() : budget_(0) {}
    explicit MomentPolynomial(int budget) : budget_(budget) {}

    static MomentPolynomial zero(int budget) { return MomentPolynomial(budget); }
    static MomentPolynomial constant(const Rational& c, int budget);
    // c * rho_0^{e[0]} * rho_1^{e[1]} * ...
    static MomentPolynomial monomial(Exponents e, const Rational& c, int budget);
    // rho_k as a polynomial
    static MomentPolynomial var(int k, int budget);

    int budget() const { return budget_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // Largest moment index actually used (-1 when constant/zero).
    int max_index() const;

    MomentPolynomial with_budget(int budget) const;

    MomentPolynomial operator+(const MomentPolynomial& o) const;
    MomentPolynomial operator-(const MomentPolynomial& o) const;
    MomentPolynomial operator-() const;
    MomentPolynomial operator*(const MomentPolynomial& o) const;
    MomentPolynomial scaled(const Rational& c) const;

    bool operator==(const MomentPolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const MomentPolynomial& o) const { return !(*this == o); }

    // d/d rho_k
    MomentPolynomial derivative(int k) const;
    // multiply by rho_k^power; power < 0 only allowed for k == 0
    MomentPolynomial mul_rho(int k, int power) const;

    // Grading weight(rho_k) = k, rho_0 ignored. Returns the common weight of
    // all terms, or nullopt when the polynomial is inhomogeneous.
    // Zero polynomial has no weight (domain error).
    std::optional<long> weight() const;

    Rational coefficient(const Exponents& e) const;

    // Exact evaluation at rho_k = point[k] (point[0] != 0 required when
    // negative rho_0 powers are present).
    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    std::string to_string() const;

private:
    void add_term(Exponents e, const Rational& c);
    static void trim(Exponents& e);
    friend MomentPolynomial poly_sum(const MomentPolynomial&, const MomentPolynomial&);

    int budget_;
    std::map<Exponents, Rational> terms_;
};

// Partial Bell polynomial B_{n,k} evaluated at polynomial arguments
// args[i] standing for x_{i+1}; needs args.size() >= n-k+1 entries for
// n,k > 0. B_{0,0} = 1, B_{n,0} = B_{0,k} = 0.
MomentPolynomial bell_eval(int n, int k, const std::vector<MomentPolynomial>& args,
                           int budget);

// B_{n,k}(x_1,...) with x_i := rho_i, as a plain polynomial.
MomentPolynomial bell_polynomial(int n, int k, int budget);

} // namespace mft
