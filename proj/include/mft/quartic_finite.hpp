#pragma once

#include <vector>

#include "mft/errors.hpp"

namespace mft {

// Finite external spectrum: strictly increasing positive eigenvalues
// with positive (real) multiplicities.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<double> multiplicities;
    double V = 1.0;
    double lambda = 0.0;

    void validate() const;
    std::size_t size() const { return eigenvalues.size(); }
};

struct DeformedSpectrum {
    std::vector<double> eps;   // deformed eigenvalues
    std::vector<double> rho;   // deformed multiplicities
    int iterations = 0;
    double residual = 0.0;
};

// Damped fixed-point solution of the implicit deformation system.
DeformedSpectrum deform(const Spectrum& s, double tol = 1e-13, int max_iter = 500);

// The rational function R built on a deformed spectrum.
class RationalR {
public:
    RationalR(Spectrum s, DeformedSpectrum d);

    const Spectrum& spectrum() const { return spec_; }
    const DeformedSpectrum& deformed() const { return def_; }

    double eval(double z) const;
    double deriv(double z) const;

    std::size_t size() const { return spec_.size(); }

private:
    Spectrum spec_;
    DeformedSpectrum def_;
};

RationalR build_r(const Spectrum& s);

struct Preimages {
    double base = 0.0;
    std::vector<double> roots;      // the other solutions of R(z) = R(u)
    double max_residual = 0.0;
    bool interlacing_checked = false;
    bool degenerate_free = false;   // lambda == 0: R is the identity
};

// All other roots of R(z) = R(u) via the companion matrix of the cleared
// numerator; residual-validated, interlacing checked for u >= 0, lambda > 0.
Preimages preimages(const RationalR& r, double u);

// Planar 2-point function, rational in both arguments.
double two_point(const RationalR& r, double z, double w);
// the manifestly symmetric pole expansion; agrees with two_point
double two_point_rfe(const RationalR& r, double z, double w);

double identity_jzz_residual(const RationalR& r, double z);
double sde_residual(const RationalR& r, double z, double w);

struct FreeEnergyDerivative {
    double value = 0.0;
    bool kq_flagged = false;  // the k = q pairing used the curvature limit
};

// (V/r_q) dF0/de_q; the singular k = q pairing is taken in its natural
// limit R''(eps_q)/(2 R'(eps_q)^2) and flagged.
FreeEnergyDerivative free_energy_derivative(const RationalR& r, std::size_t q);

} // namespace mft
