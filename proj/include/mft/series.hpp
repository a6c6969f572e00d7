#pragma once

#include <vector>

#include "mft/moment_polynomial.hpp"

namespace mft {

// Truncated formal power series with MomentPolynomial coefficients.
// coeffs[m] is the coefficient of tau^m; the truncation order is
// coeffs.size()-1 and is carried explicitly by every result.
struct FormalSeries {
    std::vector<MomentPolynomial> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

FormalSeries series_multiply(const FormalSeries& a, const FormalSeries& b);

// Reciprocal of a series whose constant coefficient is an invertible
// monomial c * rho_0^m. series_multiply(s, series_reciprocal(s)) equals
// 1 + O(tau^{order+1}) exactly.
FormalSeries series_reciprocal(const FormalSeries& s);

// The moment series sum_l (rho_l/rho_0) tau^l up to the given order.
FormalSeries moment_ratio_series(int order, int budget);

// S_m = m! * [tau^m] (sum_l (rho_l/rho_0) tau^l)^{-1}; carries 1/rho_0^m.
std::vector<MomentPolynomial> s_weights(int max_m, int budget);

// R_m built from the S_m; R_0 = 0 and every R_m is m-weighted.
std::vector<MomentPolynomial> r_weights(int max_m, int budget);

} // namespace mft
