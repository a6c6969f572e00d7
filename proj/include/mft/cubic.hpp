#pragma once

#include <utility>
#include <vector>

#include "mft/special_functions.hpp"

namespace mft {

// Moyal-type measure of physical dimension dim, renormalised as a model
// of dimension renorm_dim >= dim (over-subtraction when strictly larger).
struct MoyalMeasure {
    int dim = 2;         // 2, 4 or 6
    int renorm_dim = 2;  // dim..6, even

    void validate() const;
    // spectral density in the Y variable
    double density(double y, double lambda) const;
};

// Planar solution at coupling lambda: the implicit constant c, the
// shifted 1-point function W(X) and the 1-point function G0(x).
struct CubicSolution {
    MoyalMeasure measure;
    double lambda = 0;
    double c = 0;

    double wtilde(double x_big) const;   // X >= 0
    double one_point(double x) const;    // x >= 0
};

// Root of the implicit equation on the c(0)=0 branch; residual < 1e-12.
double solve_c(const MoyalMeasure& m, double lambda);
CubicSolution solve_cubic(const MoyalMeasure& m, double lambda);

// Taylor coefficients gamma_n of c = sum_n gamma_n lambda^{2n}, n <= order.
std::vector<double> c_series(const MoyalMeasure& m, int order);

// Coupling where dc/dlambda diverges (loss of invertibility).
double lambda_critical(const MoyalMeasure& m);

// Renormalised moments of the deformed measure by quadrature.
double kontsevich_time(const CubicSolution& sol, int l, const QuadratureSpec& spec = {});

// Fully symmetric N-point assembly from shifted eigenvalues F_p and
// shifted 1-point values W_p (single boundary).
double n_point_from_w(const std::vector<std::pair<double, double>>& fw, double lambda);

} // namespace mft
