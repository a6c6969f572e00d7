#include "mft/quartic_finite.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace mft {

void Spectrum::validate() const {
    if (eigenvalues.empty()) throw DomainError("empty spectrum");
    if (eigenvalues.size() != multiplicities.size())
        throw DomainError("eigenvalue/multiplicity length mismatch");
    if (!(V > 0)) throw DomainError("V must be positive");
    double prev = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (!(eigenvalues[i] > prev))
            throw DomainError("eigenvalues must be strictly increasing and positive");
        prev = eigenvalues[i];
        if (!(multiplicities[i] > 0)) throw DomainError("multiplicities must be positive");
    }
}

namespace {

double system_residual(const Spectrum& s, const std::vector<double>& eps,
                       const std::vector<double>& rho) {
    const std::size_t n = s.size();
    const double g = s.lambda / s.V;
    double worst = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s1 += rho[k] / (eps[k] + eps[l]);
            s2 += rho[k] / ((eps[k] + eps[l]) * (eps[k] + eps[l]));
        }
        double r1 = (eps[l] - g * s1 - s.eigenvalues[l]) / std::max(1.0, s.eigenvalues[l]);
        double r2 = s.multiplicities[l] / rho[l] - g * s2 - 1.0;
        worst = std::max(worst, std::max(std::fabs(r1), std::fabs(r2)));
    }
    return worst;
}

} // namespace

DeformedSpectrum deform(const Spectrum& s, double tol, int max_iter) {
    s.validate();
    const std::size_t n = s.size();
    const double g = s.lambda / s.V;
    DeformedSpectrum d;
    d.eps = s.eigenvalues;
    d.rho = s.multiplicities;
    double damping = 1.0;
    double prev_res = system_residual(s, d.eps, d.rho);
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> ne(n), nr(n);
        for (std::size_t l = 0; l < n; ++l) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s1 += d.rho[k] / (d.eps[k] + d.eps[l]);
                s2 += d.rho[k] / ((d.eps[k] + d.eps[l]) * (d.eps[k] + d.eps[l]));
            }
            ne[l] = s.eigenvalues[l] + g * s1;
            nr[l] = s.multiplicities[l] / (1.0 + g * s2);
            if (!(ne[l] > 0) || !(nr[l] > 0) || !std::isfinite(ne[l]) || !std::isfinite(nr[l]))
                throw ToleranceError("deformation left the positive cone; outside the "
                                     "contraction neighbourhood",
                                     prev_res);
        }
        for (std::size_t l = 0; l < n; ++l) {
            d.eps[l] += damping * (ne[l] - d.eps[l]);
            d.rho[l] += damping * (nr[l] - d.rho[l]);
        }
        d.iterations = it;
        double res = system_residual(s, d.eps, d.rho);
        if (res < tol) {
            d.residual = res;
            return d;
        }
        if (res > prev_res && damping > 0.5) damping = 0.5;  // oscillation guard
        if (res > 10 * prev_res && res > 1.0)
            throw ToleranceError("fixed point diverges; last residual " + std::to_string(res),
                                 res);
        prev_res = res;
    }
    throw ToleranceError("fixed point did not reach tolerance; residual " +
                             std::to_string(prev_res),
                         prev_res);
}

RationalR::RationalR(Spectrum s, DeformedSpectrum d) : spec_(std::move(s)), def_(std::move(d)) {
    if (spec_.size() != def_.eps.size()) throw DomainError("spectrum size mismatch");
}

double RationalR::eval(double z) const {
    double g = spec_.lambda / spec_.V;
    double sum = 0.0;
    for (std::size_t k = 0; k < def_.eps.size(); ++k) sum += def_.rho[k] / (def_.eps[k] + z);
    return z - g * sum;
}

double RationalR::deriv(double z) const {
    double g = spec_.lambda / spec_.V;
    double sum = 0.0;
    for (std::size_t k = 0; k < def_.eps.size(); ++k)
        sum += def_.rho[k] / ((def_.eps[k] + z) * (def_.eps[k] + z));
    return 1.0 + g * sum;
}

RationalR build_r(const Spectrum& s) { return RationalR(s, deform(s)); }

namespace {

// coefficients (ascending) of prod_k (x + a_k)
std::vector<double> poly_from_roots_neg(const std::vector<double>& a) {
    std::vector<double> c{1.0};
    for (double ak : a) {
        std::vector<double> nc(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            nc[i] += c[i] * ak;
            nc[i + 1] += c[i];
        }
        c = std::move(nc);
    }
    return c;
}

// Osborne balancing: diagonal power-of-two scaling to even out row and
// column norms before the eigenvalue run.
void balance(Eigen::MatrixXd& m) {
    const long n = m.rows();
    for (int sweep = 0; sweep < 20; ++sweep) {
        bool changed = false;
        for (long i = 0; i < n; ++i) {
            double r = 0, c = 0;
            for (long j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::fabs(m(i, j));
                c += std::fabs(m(j, i));
            }
            if (r == 0 || c == 0) continue;
            double f = 1.0;
            while (c < r / 2) {
                c *= 2;
                r /= 2;
                f *= 2;
            }
            while (c > r * 2) {
                c /= 2;
                r *= 2;
                f /= 2;
            }
            if (f != 1.0) {
                changed = true;
                m.col(i) *= f;
                m.row(i) /= f;
            }
        }
        if (!changed) break;
    }
}

std::vector<double> real_roots_companion(std::vector<double> coeffs) {
    // ascending coefficients, leading != 0
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    const std::size_t deg = coeffs.size() - 1;
    if (deg == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (std::size_t i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
    balance(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<double> roots;
    for (long i = 0; i < solver.eigenvalues().size(); ++i) {
        auto ev = solver.eigenvalues()[i];
        if (std::fabs(ev.imag()) < 1e-8 * (1.0 + std::fabs(ev.real())))
            roots.push_back(ev.real());
    }
    return roots;
}

} // namespace

Preimages preimages(const RationalR& r, double u) {
    const auto& eps = r.deformed().eps;
    const auto& rho = r.deformed().rho;
    const std::size_t n = eps.size();
    const double g = r.spectrum().lambda / r.spectrum().V;
    for (double e : eps)
        if (std::fabs(u + e) < 1e-12 * (1.0 + std::fabs(u)))
            throw DomainError("base point sits on a pole of R");

    Preimages out;
    out.base = u;
    if (r.spectrum().lambda == 0.0) {
        // R is the identity; the numerator degenerates and there are no
        // extra roots
        out.degenerate_free = true;
        return out;
    }

    // clear denominators of R(z) - R(u):
    //   (z - R(u)) prod_k (eps_k + z) - g sum_k rho_k prod_{j!=k} (eps_j + z)
    const double ru = r.eval(u);
    std::vector<double> full = poly_from_roots_neg(eps);
    std::vector<double> num(full.size() + 1, 0.0);
    for (std::size_t i = 0; i < full.size(); ++i) {
        num[i + 1] += full[i];
        num[i] -= ru * full[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> others;
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) others.push_back(eps[j]);
        std::vector<double> pk = poly_from_roots_neg(others);
        for (std::size_t i = 0; i < pk.size(); ++i) num[i] -= g * rho[k] * pk[i];
    }
    // deflate the known root z = u: num(z) = (z - u) q(z)
    std::vector<double> q(num.size() - 1, 0.0);
    double carry = num.back();
    for (std::size_t i = num.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = num[i] + carry * u;
    }
    // carry is the remainder; validated below through the root residuals

    out.roots = real_roots_companion(q);
    if (out.roots.size() != n)
        throw ToleranceError("preimage root count mismatch: " +
                                 std::to_string(out.roots.size()) + " of " + std::to_string(n),
                             static_cast<double>(out.roots.size()));
    std::sort(out.roots.begin(), out.roots.end(), std::greater<double>());
    double scale = std::max(1.0, std::fabs(ru));
    for (double z : out.roots) {
        double res = std::fabs(r.eval(z) - ru) / scale;
        out.max_residual = std::max(out.max_residual, res);
    }
    if (out.max_residual > 1e-7)
        throw ToleranceError("preimage residual too large", out.max_residual);
    if (u >= 0.0 && r.spectrum().lambda > 0.0) {
        // roots interlace the poles: -eps_{k+1} < root_k < -eps_k,
        // last root below -eps_n
        out.interlacing_checked = true;
        for (std::size_t k = 0; k + 1 < n; ++k)
            if (!(out.roots[k] < -eps[k] && out.roots[k] > -eps[k + 1]))
                throw ConsistencyError("preimages do not interlace the poles");
        if (!(out.roots[n - 1] < -eps[n - 1]))
            throw ConsistencyError("last preimage not below the last pole");
    }
    return out;
}

namespace {

// G(eps_p, v) for every p, via the product over the preimages of v
std::vector<double> g_at_eps(const RationalR& r, double v) {
    const auto& eps = r.deformed().eps;
    const std::size_t n = eps.size();
    const double g = r.spectrum().lambda / r.spectrum().V;
    const auto& rk = r.spectrum().multiplicities;
    std::vector<double> out(n);
    if (r.spectrum().lambda == 0.0) {
        for (std::size_t p = 0; p < n; ++p) out[p] = 1.0 / (eps[p] + v);
        return out;
    }
    Preimages pv = preimages(r, v);
    for (std::size_t p = 0; p < n; ++p) {
        double val = -1.0 / (g * rk[p]);
        double rp = r.eval(eps[p]);
        for (std::size_t k = 0; k < n; ++k) val *= rp - r.eval(-pv.roots[k]);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == p) continue;
            val /= rp - r.eval(eps[j]);
        }
        out[p] = val;
    }
    return out;
}

} // namespace

double two_point(const RationalR& r, double z, double w) {
    if (std::fabs(z + w) < 1e-12 * (1.0 + std::fabs(z)))
        throw DomainError("2-point function has a pole at z + w = 0");
    if (r.spectrum().lambda == 0.0) return 1.0 / (z + w);
    const auto& eps = r.deformed().eps;
    const auto& rk = r.spectrum().multiplicities;
    const double g = r.spectrum().lambda / r.spectrum().V;
    // arguments on a deformed eigenvalue go through the product formula;
    // there the summed form would pair a pole of R(-z) with a vanishing
    // denominator
    for (std::size_t p = 0; p < eps.size(); ++p) {
        if (std::fabs(z - eps[p]) < 1e-12 * (1.0 + std::fabs(z)))
            return g_at_eps(r, w)[p];
    }
    for (std::size_t q = 0; q < eps.size(); ++q) {
        if (std::fabs(w - eps[q]) < 1e-12 * (1.0 + std::fabs(w)))
            return g_at_eps(r, z)[q];
    }
    std::vector<double> gew = g_at_eps(r, w);
    double sum = 0.0;
    for (std::size_t k = 0; k < eps.size(); ++k)
        sum += rk[k] * gew[k] / (r.eval(eps[k]) - r.eval(z));
    return (1.0 + g * sum) / (r.eval(w) - r.eval(-z));
}

double two_point_rfe(const RationalR& r, double z, double w) {
    if (r.spectrum().lambda == 0.0) return 1.0 / (z + w);
    const auto& eps = r.deformed().eps;
    const auto& rk = r.spectrum().multiplicities;
    const std::size_t n = eps.size();
    const double g = r.spectrum().lambda / r.spectrum().V;
    // preimages of every eigenvalue, the 2-point matrix at eigenvalues
    std::vector<std::vector<double>> hats(n);
    for (std::size_t k = 0; k < n; ++k) hats[k] = preimages(r, eps[k]).roots;
    std::vector<std::vector<double>> gee(n, std::vector<double>(n));
    for (std::size_t q = 0; q < n; ++q) {
        auto col = g_at_eps(r, eps[q]);
        for (std::size_t p = 0; p < n; ++p) gee[p][q] = col[p];
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t nn = 0; nn < n; ++nn) {
                    double hk = hats[k][m], hl = hats[l][nn];
                    double c = (hk + hl) * rk[k] * rk[l] * gee[k][l] /
                               (r.deriv(hk) * r.deriv(hl) * (r.eval(eps[l]) - r.eval(-hk)) *
                                (r.eval(eps[k]) - r.eval(-hl)));
                    sum += c / ((z - hk) * (w - hl));
                }
    return (1.0 + g * g * sum) / (z + w);
}

double identity_jzz_residual(const RationalR& r, double z) {
    const auto& eps = r.deformed().eps;
    const auto& rk = r.spectrum().multiplicities;
    const double g = r.spectrum().lambda / r.spectrum().V;
    double total = r.eval(z) + r.eval(-z);
    if (r.spectrum().lambda != 0.0) {
        for (std::size_t k = 0; k < eps.size(); ++k) {
            total += g * rk[k] * two_point(r, z, eps[k]);
            total += g * rk[k] / (r.eval(eps[k]) - r.eval(z));
        }
    }
    return std::fabs(total);
}

double sde_residual(const RationalR& r, double z, double w) {
    const auto& eps = r.deformed().eps;
    const auto& rk = r.spectrum().multiplicities;
    const double g = r.spectrum().lambda / r.spectrum().V;
    double bracket = r.eval(z) + r.eval(w);
    double rhs = 1.0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (r.spectrum().lambda != 0.0) {
            bracket += g * rk[k] * two_point(r, z, eps[k]);
            bracket += g * rk[k] / (r.eval(eps[k]) - r.eval(z));
            rhs += g * rk[k] * two_point(r, eps[k], w) / (r.eval(eps[k]) - r.eval(z));
        }
    }
    return std::fabs(bracket * two_point(r, z, w) - rhs);
}

FreeEnergyDerivative free_energy_derivative(const RationalR& r, std::size_t q) {
    const auto& e = r.spectrum().eigenvalues;
    const auto& rk = r.spectrum().multiplicities;
    const auto& eps = r.deformed().eps;
    const std::size_t n = e.size();
    if (q >= n) throw DomainError("eigenvalue index out of range");
    const double lambda = r.spectrum().lambda;
    FreeEnergyDerivative out;
    if (lambda == 0.0) return out;
    double total = (e[q] - eps[q]) / lambda;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == q) {
            // the two singular terms pair to the curvature of R at eps_q
            double h = 1e-5 * (1.0 + std::fabs(eps[q]));
            double rpp =
                (r.deriv(eps[q] + h) - r.deriv(eps[q] - h)) / (2.0 * h);
            double rp = r.deriv(eps[q]);
            total += rk[k] / r.spectrum().V * (rpp / (2.0 * rp * rp));
            out.kq_flagged = true;
            continue;
        }
        total += rk[k] / r.spectrum().V *
                 (1.0 / (e[k] - e[q]) - 1.0 / (r.deriv(eps[k]) * (eps[k] - eps[q])));
    }
    out.value = total;
    return out;
}

} // namespace mft
