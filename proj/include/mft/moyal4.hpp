#pragma once

#include "mft/special_functions.hpp"

namespace mft {

// Parameters of the 4-dimensional Moyal specialisation on the real
// branch |lambda| <= 1/pi; sin(alpha pi) = lambda pi.
struct Moyal4Params {
    double lambda = 0.0;
    double alpha = 0.0;
    double mu2 = 1.0;
    double c_lambda = 1.0;
};

// mu2 < 0 means "use the natural choice alpha(1-alpha)/lambda".
Moyal4Params moyal4_params(double lambda, double mu2 = -1.0);

// The interaction-dressed spectral density rho_lambda(x).
double rho_lambda(const Moyal4Params& p, double x);

// | rho(x) - x + lambda x^2 Integral | of the defining linear integral
// equation, by adaptive quadrature split at t = max(10, 10x).
double fredholm_residual(const Moyal4Params& p, double x,
                         const QuadratureSpec& spec = {});

double effective_dimension_formula(double lambda);
// log-log slope estimate of rho_lambda on [1e3, 1e6]
double effective_dimension_estimate(const Moyal4Params& p);

struct BoundaryIntegral {
    double quadrature = 0.0;  // integral of rho/(mu^2+t)^3
    double limit_route = 0.0; // small-x limit of (x - rho(x))/(lambda x^2)
};

BoundaryIntegral boundary_integral(const Moyal4Params& p, const QuadratureSpec& spec = {});

// Closed-form planar 2-point function through second order in lambda.
double g2_perturbative(double a, double b, double lambda, int order = 2);

// Natural-mass series coefficients of lambda^0..lambda^n.
std::vector<double> mu2_series(int order);

struct SandwichBounds {
    double lower = 0.0;
    double upper = 0.0;
    double value = 0.0;
    bool holds = false;
};

// Pointwise hypergeometric bounds (1+x/mu^2)^{-alpha} type; orientation
// flips with the sign of alpha.
SandwichBounds sandwich_bounds(const Moyal4Params& p, double x);

} // namespace mft
