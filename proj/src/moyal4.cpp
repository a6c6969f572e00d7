#include "mft/moyal4.hpp"

#include <cmath>

#include "mft/errors.hpp"

namespace mft {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Moyal4Params moyal4_params(double lambda, double mu2) {
    if (!(lambda > -1.0 / kPi) || lambda > 1.0 / kPi + 1e-15)
        throw DomainError("real branch needs -1/pi < lambda <= 1/pi");
    Moyal4Params p;
    p.lambda = lambda;
    p.alpha = std::asin(std::min(1.0, lambda * kPi)) / kPi;
    if (lambda == 0.0) {
        p.c_lambda = 1.0;
        p.mu2 = (mu2 > 0) ? mu2 : 1.0;
        return p;
    }
    p.c_lambda = lambda / (p.alpha * (1.0 - p.alpha));
    p.mu2 = (mu2 > 0) ? mu2 : p.alpha * (1.0 - p.alpha) / lambda;
    if (!(p.mu2 > 0)) throw DomainError("mu^2 must be positive");
    return p;
}

double rho_lambda(const Moyal4Params& p, double x) {
    if (x < 0) throw DomainError("measure defined for x >= 0");
    if (x == 0.0) return 0.0;
    return x * hyp2f1(p.alpha, 1.0 - p.alpha, 2.0, -x / p.mu2);
}

double fredholm_residual(const Moyal4Params& p, double x, const QuadratureSpec& spec) {
    if (x < 0) throw DomainError("x >= 0 required");
    if (p.lambda == 0.0) return 0.0;
    auto integrand = [&](double t) {
        return rho_lambda(p, t) /
               ((t + p.mu2) * (t + p.mu2) * (t + p.mu2 + x));
    };
    double split = std::max(10.0, 10.0 * x);
    double head = integrate_interval(integrand, 0.0, split, spec).value;
    // tail decays like t^{-2-alpha}; integrate it on the mapped half-line
    double tail = integrate_halfline(integrand, split, spec).value;
    double integral = head + tail;
    return std::fabs(rho_lambda(p, x) - x + p.lambda * x * x * integral);
}

double effective_dimension_formula(double lambda) {
    if (std::fabs(lambda) >= 1.0 / kPi + 1e-15)
        throw DomainError("|lambda| < 1/pi required");
    return 4.0 - 2.0 * std::asin(lambda * kPi) / kPi;
}

double effective_dimension_estimate(const Moyal4Params& p) {
    // slope s of log rho vs log x gives dimension 2 + 2s
    double x0 = 1e3, x1 = 1e6;
    double s = (std::log(rho_lambda(p, x1)) - std::log(rho_lambda(p, x0))) /
               (std::log(x1) - std::log(x0));
    return 2.0 + 2.0 * s;
}

BoundaryIntegral boundary_integral(const Moyal4Params& p, const QuadratureSpec& spec) {
    BoundaryIntegral out;
    auto integrand = [&](double t) {
        double m = t + p.mu2;
        return rho_lambda(p, t) / (m * m * m);
    };
    out.quadrature = integrate_halfline(integrand, 0.0, spec).value;
    if (p.lambda == 0.0) {
        out.limit_route = out.quadrature;
        return out;
    }
    // (x - rho(x))/(lambda x^2) -> integral as x -> 0; quadratic
    // extrapolation from three geometric samples
    auto probe = [&](double x) {
        return (x - rho_lambda(p, x)) / (p.lambda * x * x);
    };
    double x1 = 1e-3, x2 = 2e-3, x3 = 4e-3;
    double f1 = probe(x1), f2 = probe(x2), f3 = probe(x3);
    out.limit_route = f1 * x2 * x3 / ((x2 - x1) * (x3 - x1)) +
                      f2 * x1 * x3 / ((x1 - x2) * (x3 - x2)) +
                      f3 * x1 * x2 / ((x3 - x1) * (x3 - x2));
    return out;
}

double g2_perturbative(double a, double b, double lambda, int order) {
    if (a < 0 || b < 0) throw DomainError("arguments must be >= 0");
    if (order < 0 || order > 2) throw DomainError("order must be 0, 1 or 2");
    const double d = 1.0 + a + b;
    double value = 1.0 / d;
    if (order >= 1) {
        double la = std::log1p(a), lb = std::log1p(b);
        value -= lambda / (d * d) * ((1.0 + a) * la + (1.0 + b) * lb);
        if (order >= 2) {
            double zeta2 = kPi * kPi / 6.0;
            double li2a = dilog(-a), li2b = dilog(-b);
            double brace = zeta2 * a * b + (1.0 + a) * (1.0 + b) * la * lb -
                           a * (1.0 + b) * lb * lb - b * (1.0 + a) * la * la -
                           (1.0 + b + 2.0 * a + 2.0 * a * b + a * a) * li2a -
                           (1.0 + a + 2.0 * b + 2.0 * a * b + b * b) * li2b;
            value += lambda * lambda / (d * d * d) * brace;
        }
    }
    return value;
}

std::vector<double> mu2_series(int order) {
    if (order < 0) throw DomainError("order must be >= 0");
    // arcsin(x)/x = sum_n (2n-1)!!/(2n)!! x^{2n}/(2n+1) composed into
    // alpha(1-alpha)/lambda: even orders from arcsin/x, odd from its square
    std::vector<double> out(order + 1, 0.0);
    auto asc = [&](int n) {
        // coefficient of x^{2n} in arcsin(x)/x
        double num = 1.0, den = 1.0;
        for (int i = 1; i <= n; ++i) {
            num *= 2.0 * i - 1.0;
            den *= 2.0 * i;
        }
        return num / (den * (2.0 * n + 1.0));
    };
    for (int m = 0; m <= order; ++m) {
        if (m % 2 == 0) {
            out[m] = asc(m / 2) * std::pow(kPi, m);
        } else {
            // -lambda (arcsin(pi lambda)/(pi lambda))^2
            int n = (m - 1) / 2;
            double conv = 0.0;
            for (int i = 0; i <= n; ++i) conv += asc(i) * asc(n - i);
            out[m] = -conv * std::pow(kPi, m - 1);
        }
    }
    return out;
}

SandwichBounds sandwich_bounds(const Moyal4Params& p, double x) {
    SandwichBounds b;
    double base = std::pow(1.0 + x / p.mu2, -p.alpha);
    double ratio = std::tgamma(1.0 - 2.0 * p.alpha) /
                   (std::tgamma(2.0 - p.alpha) * std::tgamma(1.0 - p.alpha));
    b.value = hyp2f1(p.alpha, 1.0 - p.alpha, 2.0, -x / p.mu2);
    double lo = base, hi = ratio * base;
    if (lo > hi) std::swap(lo, hi);
    b.lower = lo;
    b.upper = hi;
    b.holds = (b.value >= lo - 1e-13 * std::fabs(lo)) &&
              (b.value <= hi + 1e-13 * std::fabs(hi));
    return b;
}

} // namespace mft
