#pragma once

#include <map>
#include <string>
#include <vector>

#include "mft/laurent.hpp"

namespace mft {

// Genus-g correlation function with b ordered boundary variables.
// For 2-2g-b < 0 the body is a Laurent polynomial, odd with exponents
// <= -3 in every variable. The unstable (g=0,b=2) seed has a closed
// form that is kept out of the Laurent cone and flagged instead.
struct CorrelationFn {
    int genus = 0;
    std::vector<std::string> vars;
    LaurentExpr body;
    bool unstable_b2 = false;
};

// F_g. g=1 is the tagged token -(1/24) log rho0 whose only algebraic
// access is d/d rho0 = -1/(24 rho0). For g>=2 the value is
// (2 lambda)^{two_lambda_exp} * poly with two_lambda_exp = 4g-4.
struct FreeEnergy {
    int genus = 0;
    bool log_token = false;
    MomentPolynomial poly;
    long two_lambda_exp = 0;
};

enum class FreeEnergyRoute { annihilate, laplacian };

// <tau_2^{k2} ... tau_{3g-2}^{k_{3g-2}}> indexed by (k2,...,k_{3g-2});
// entries ordered reverse-lexicographically.
struct IntersectionTable {
    int genus = 0;
    std::vector<std::pair<std::vector<int>, Rational>> entries;
};

CorrelationFn seed_g0b2();
CorrelationFn seed_g0b3(int budget = 0);
CorrelationFn seed_g1b1(int budget = 1);

// (2 lambda)^3 * Adag^g_{J,z} f for a new variable z; J is f's variable
// list. Needs budget >= 3g-2+|J|.
CorrelationFn boundary_create(const CorrelationFn& f, const std::string& z);
CorrelationFn boundary_create(const FreeEnergy& f, const std::string& z, int budget);

// Boundary annihilation on a Laurent polynomial in `var`; the result no
// longer depends on var.
LaurentExpr boundary_annihilate(const LaurentExpr& f, const std::string& var);

// Euler-characteristic counting operator -sum_l rho_l d/d rho_l.
LaurentExpr euler_grading(const LaurentExpr& f);

class KontsevichCache {
public:
    const CorrelationFn& one_point(int g);
    const CorrelationFn& correlation(int g, int b);

private:
    std::map<int, CorrelationFn> one_point_;
    std::map<std::pair<int, int>, CorrelationFn> corr_;
};

// G_g(z), g >= 1, via the residue inversion of the loop equation.
CorrelationFn one_point(int g);

// G_g(z_1..z_b) by iterated boundary creation; variables z1..zb.
CorrelationFn correlation(int g, int b);

FreeEnergy free_energy(int g, FreeEnergyRoute route);
// computes both routes and insists they agree
FreeEnergy free_energy_checked(int g);

// The second-order moment Laplacian; exact rational coefficients.
MomentPolynomial laplacian_delta_rho(const MomentPolynomial& f);

IntersectionTable intersection_numbers(int g);

// ---- deformed Virasoro constraints ----

// Truncation of exp(sum_{g>=1} u^{g-1} F_g) in s = (2 lambda)^4 u.
// w[m] is the s^m coefficient of the stable factor; the rho_0^{-1/24}
// prefactor of F_1 is implicit and handled by the operators.
struct TruncatedZ {
    int gmax = 1;
    std::vector<MomentPolynomial> w;
    bool stable_convention = false;  // np convention by default
};

TruncatedZ truncated_z(int gmax);

struct VirasoroReport {
    int n = 0;
    // residual polynomial per s-order that the truncation fully determines
    std::vector<MomentPolynomial> residuals;
    std::vector<int> determined_orders;
    std::vector<int> excluded_orders;  // would need F_{g > gmax}
    bool all_zero = true;
};

VirasoroReport virasoro_apply(int n, const TruncatedZ& z);

// L_n acting on a plain polynomial (no implicit token), with the
// deformation constant A given as an exact rational. Exposed for the
// commutator identity [L_0, L_n] = -n L_n.
MomentPolynomial virasoro_generator(int n, const MomentPolynomial& f, const Rational& A);

} // namespace mft
