#pragma once

#include <map>
#include <string>
#include <vector>

#include "mft/moment_polynomial.hpp"

namespace mft {

// Finite sum of Laurent monomials in a set of named complex variables,
// with MomentPolynomial coefficients and a single integer power of the
// coupling lambda (powers of 2 are folded into the rational coefficients).
class LaurentExpr {
public:
    LaurentExpr() = default;
    explicit LaurentExpr(std::vector<std::string> vars, long lambda_exp = 0)
        : vars_(std::move(vars)), lambda_exp_(lambda_exp) {}

    static LaurentExpr zero(std::vector<std::string> vars, long lambda_exp = 0) {
        return LaurentExpr(std::move(vars), lambda_exp);
    }
    // coeff * prod_i var_i^{zexp[i]} * lambda^{lambda_exp}
    static LaurentExpr monomial(std::vector<std::string> vars, std::vector<int> zexp,
                                MomentPolynomial coeff, long lambda_exp);

    const std::vector<std::string>& vars() const { return vars_; }
    long lambda_exp() const { return lambda_exp_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, MomentPolynomial>& terms() const { return terms_; }

    int var_index(const std::string& name) const;
    bool has_var(const std::string& name) const;

    LaurentExpr operator+(const LaurentExpr& o) const;
    LaurentExpr operator-(const LaurentExpr& o) const;
    LaurentExpr operator-() const;
    LaurentExpr operator*(const LaurentExpr& o) const;
    LaurentExpr scaled(const Rational& c) const;
    LaurentExpr scaled_poly(const MomentPolynomial& p) const;
    LaurentExpr mul_var(const std::string& name, int power) const;
    LaurentExpr mul_lambda(long dexp, const Rational& c) const;

    bool operator==(const LaurentExpr& o) const;

    LaurentExpr derivative(const std::string& name) const;
    // substitute src -> dst (merging exponents); drops src from the
    // variable list
    LaurentExpr substitute(const std::string& src, const std::string& dst) const;
    LaurentExpr rename(const std::string& src, const std::string& dst) const;
    // reorder/extend to the given variable list
    LaurentExpr aligned(const std::vector<std::string>& vars) const;

    // coefficient of name^{-1}, as an expression in the remaining variables
    LaurentExpr residue_at_zero(const std::string& name) const;

    bool odd_in(const std::string& name) const;
    bool symmetric_under_swap(const std::string& a, const std::string& b) const;

    int min_exponent(const std::string& name) const;  // 0 for absent/zero
    int max_exponent(const std::string& name) const;

    void add_term(std::vector<int> zexp, const MomentPolynomial& coeff);

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    std::map<std::vector<int>, MomentPolynomial> terms_;
    long lambda_exp_ = 0;
};

// K-operator on the odd-negative cone: var^{-(3+2n)} |-> sum_{k<=n}
// rho_k var^{-(2n+2-2k)}, extended linearly over all other variables.
// Rejects var^{-1}, even or positive powers of var.
LaurentExpr khat_apply(const LaurentExpr& e, const std::string& var);

// Inverse on even non-positive powers of a single variable: returns g
// with  var^2 * khat_apply(g / var) == f  exactly.
LaurentExpr khat_inverse(const LaurentExpr& f, const std::string& var);

} // namespace mft
