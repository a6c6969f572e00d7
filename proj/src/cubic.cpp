#include "mft/cubic.hpp"

#include <cmath>

#include "mft/errors.hpp"

namespace mft {

namespace {

// truncated power series in t = lambda^2 with double coefficients
struct TSeries {
    std::vector<double> a;

    explicit TSeries(int order, double c0 = 0.0) : a(order + 1, 0.0) { a[0] = c0; }
    int order() const { return static_cast<int>(a.size()) - 1; }
};

TSeries operator+(const TSeries& x, const TSeries& y) {
    TSeries out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
    return out;
}
TSeries operator-(const TSeries& x, const TSeries& y) {
    TSeries out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
    return out;
}
TSeries operator*(const TSeries& x, const TSeries& y) {
    TSeries out(x.order());
    for (int i = 0; i <= x.order(); ++i)
        for (int j = 0; i + j <= x.order(); ++j) out.a[i + j] += x.a[i] * y.a[j];
    return out;
}
TSeries operator*(double c, const TSeries& x) {
    TSeries out = x;
    for (auto& v : out.a) v *= c;
    return out;
}
TSeries recip(const TSeries& x) {
    TSeries out(x.order());
    out.a[0] = 1.0 / x.a[0];
    for (int m = 1; m <= x.order(); ++m) {
        double s = 0;
        for (int i = 1; i <= m; ++i) s += x.a[i] * out.a[m - i];
        out.a[m] = -s * out.a[0];
    }
    return out;
}
TSeries log_ts(const TSeries& x) {
    // (log x)' = x'/x integrated term by term
    TSeries d(x.order());
    for (int i = 0; i < x.order(); ++i) d.a[i] = (i + 1) * x.a[i + 1];
    TSeries q = d * recip(x);
    TSeries out(x.order(), std::log(x.a[0]));
    for (int i = 1; i <= x.order(); ++i) out.a[i] = q.a[i - 1] / i;
    return out;
}
TSeries ts_const(int order, double v) { return TSeries(order, v); }

double log_term(const double& s, const double&) { return std::log(1.0 + 1.0 / s); }
double recip_term(const double& s) { return 1.0 / s; }
TSeries log_term(const TSeries& s, const TSeries& one) { return log_ts(one + recip(s)); }
TSeries recip_term(const TSeries& s) { return recip(s); }

// Implicit equation E(s, t) = 0 with s = sqrt(1+c), t = lambda^2, in a
// form shared by scalar and series evaluation.
template <typename T>
T implicit_eq(const MoyalMeasure& m, const T& s, const T& t, const T& one) {
    const T lg = log_term(s, one);
    const int d = m.dim, r = m.renorm_dim;
    if (d == 2 && r == 2) return s + 2.0 * (t * lg) - one;
    if (d == 4 && r == 4) return s + t * (one - s * lg) - one;
    if (d == 6 && r == 6) {
        T s2 = s * s;
        return 4.0 * (s2 - one) + t * (one - 2.0 * s + 2.0 * (s2 * lg));
    }
    if (d == 2 && r == 4)
        return s - one + t * ((one - 2.0 * s) * recip_term(s) + 2.0 * (s * lg));
    // d == 2, r == 6
    T s2 = s * s;
    return s2 - one +
           t * (0.5 * recip_term(s2) + 3.0 * one - 6.0 * s + 2.0 * ((3.0 * s2 - one) * lg));
}

double deriv_at_base(const MoyalMeasure& m) {
    // d/ds of the t^0 part at s = 1
    if (m.dim == 6) return 8.0;
    if (m.dim == 2 && m.renorm_dim == 6) return 2.0;
    return 1.0;
}

double scalar_eq(const MoyalMeasure& m, double s, double t) {
    return implicit_eq<double>(m, s, t, 1.0);
}

double scalar_eq_ds(const MoyalMeasure& m, double s, double t) {
    double h = 1e-7 * std::max(1.0, std::fabs(s));
    return (scalar_eq(m, s + h, t) - scalar_eq(m, s - h, t)) / (2 * h);
}

// Newton in s on (0, 1.5]; NaN when the branch is lost.
double newton_s(const MoyalMeasure& m, double t, double s0) {
    double s = s0;
    for (int i = 0; i < 200; ++i) {
        if (!(s > 1e-9) || s > 1.5) return std::nan("");
        double f = scalar_eq(m, s, t);
        double d = scalar_eq_ds(m, s, t);
        if (!(d > 0)) return std::nan("");
        double step = f / d;
        if (s - step <= 0) step = s / 2;
        s -= step;
        if (std::fabs(step) < 1e-15 * std::max(1.0, s)) break;
    }
    if (std::fabs(scalar_eq(m, s, t)) > 1e-12) return std::nan("");
    return s;
}

} // namespace

void MoyalMeasure::validate() const {
    if (dim != 2 && dim != 4 && dim != 6) throw DomainError("dimension must be 2, 4 or 6");
    if (renorm_dim != 2 && renorm_dim != 4 && renorm_dim != 6)
        throw DomainError("renormalisation dimension must be 2, 4 or 6");
    if (renorm_dim < dim) throw DomainError("renormalisation dimension below dimension");
    if (dim != 2 && renorm_dim != dim)
        throw DomainError("over-renormalisation is supported for dim 2 only");
}

double solve_c(const MoyalMeasure& m, double lambda) {
    m.validate();
    double t = lambda * lambda;
    // continuation from t = 0 for robustness near the convergence radius
    double s = 1.0;
    int steps = 8;
    for (int i = 1; i <= steps; ++i) {
        double ti = t * i / steps;
        double next = newton_s(m, ti, s);
        if (std::isnan(next))
            throw ToleranceError("no convergence: coupling outside radius; last sqrt(1+c) = " +
                                     std::to_string(s),
                                 s);
        s = next;
    }
    return s * s - 1.0;
}

double CubicSolution::wtilde(double X) const {
    if (X < 0) throw DomainError("W defined for X >= 0");
    const double t = lambda * lambda;
    const double sX = std::sqrt(X), sXc = std::sqrt(X + c), s1 = std::sqrt(1.0 + c);
    // (sqrt(X) + sqrt(X+c))(sqrt(X) + 1) / (sqrt(X) sqrt(1+c) + sqrt(X+c)),
    // the cutoff-independent part of the integrated measure
    const double ratio = (sX + sXc) * (sX + 1.0) / (sX * s1 + sXc);
    const int d = measure.dim, r = measure.renorm_dim;
    if (d == 2 && r == 2) return sXc + 2.0 * t / sX * std::log(ratio);
    if (d == 4 && r == 4)
        return 1.0 + sXc - s1 -
               t * (std::log((s1 + sXc) / (2.0 * (1.0 + s1))) + std::log(ratio) / sX);
    if (d == 6 && r == 6)
        return sXc * s1 - c +
               0.5 * t *
                   (s1 - sXc + std::log((sXc + s1) / (2.0 * (1.0 + s1))) +
                    (1.0 + X) / (2.0 * sX) * std::log(ratio));
    if (d == 2 && r == 4)
        return 1.0 + sXc - s1 -
               2.0 * t * (std::log(1.0 + 1.0 / s1) - std::log(ratio) / sX);
    // d == 2, r == 6
    return sXc * s1 - c +
           2.0 * t *
               (s1 - sXc - 0.5 + sXc / (2.0 * s1) +
                (s1 * (sXc - s1) - 1.0) * std::log(1.0 + 1.0 / s1) + std::log(ratio) / sX);
}

double CubicSolution::one_point(double x) const {
    if (x < 0) throw DomainError("G0 defined for x >= 0");
    if (lambda == 0.0) return 0.0;
    double u = 1.0 + 2.0 * x;
    return (wtilde(u * u) - u) / (2.0 * lambda);
}

CubicSolution solve_cubic(const MoyalMeasure& m, double lambda) {
    CubicSolution sol;
    sol.measure = m;
    sol.lambda = lambda;
    sol.c = solve_c(m, lambda);
    return sol;
}

std::vector<double> c_series(const MoyalMeasure& m, int order) {
    m.validate();
    if (order < 0 || order > 8) throw DomainError("series order must be 0..8");
    int M = order;
    TSeries s(M, 1.0);
    TSeries t(M);
    if (M >= 1) t.a[1] = 1.0;
    TSeries one = ts_const(M, 1.0);
    double d0 = deriv_at_base(m);
    for (int ord = 1; ord <= M; ++ord) {
        TSeries E = implicit_eq<TSeries>(m, s, t, one);
        s.a[ord] -= E.a[ord] / d0;
    }
    TSeries c = s * s - one;
    return c.a;
}

double lambda_critical(const MoyalMeasure& m) {
    m.validate();
    // walk t upward along the branch until Newton loses it, then bisect
    double s = 1.0, t_ok = 0.0, t = 0.01;
    for (;;) {
        double next = newton_s(m, t, s);
        if (std::isnan(next)) break;
        s = next;
        t_ok = t;
        t *= 1.05;
        if (t > 1e4) throw ToleranceError("no critical coupling found below lambda^2 = 1e4", t);
    }
    double lo = t_ok, hi = t;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double got = newton_s(m, mid, s);
        if (std::isnan(got)) {
            hi = mid;
        } else {
            lo = mid;
            s = got;
        }
    }
    return std::sqrt(lo);
}

namespace {

double measure_density(int dim, double y) {
    // lambda^2 factor stripped; caller scales
    double sy = std::sqrt(y);
    if (dim == 2) return 2.0 / sy;
    if (dim == 4) return (sy - 1.0) / sy;
    return (sy - 1.0) * (sy - 1.0) / (4.0 * sy);
}

} // namespace

double MoyalMeasure::density(double y, double lambda) const {
    return lambda * lambda * measure_density(dim, y);
}

double kontsevich_time(const CubicSolution& sol, int l, const QuadratureSpec& spec) {
    if (l < 0) throw DomainError("moment index must be >= 0");
    const double c = sol.c;
    const double lam2 = sol.lambda * sol.lambda;
    const int dim = sol.measure.dim;
    auto plain = [&](double y) {
        return lam2 * measure_density(dim, y) / std::pow(y + c, 1.5 + l);
    };
    if (sol.measure.renorm_dim < 6) {
        double integral = integrate_halfline(plain, 1.0, spec).value;
        return (l == 0 ? 1.0 : 0.0) - 0.5 * integral;
    }
    // renormalisation at dimension 6 trades the divergent wave-function
    // constant against the l = 0 moment; combine the integrands first
    double s1 = std::sqrt(1.0 + c);
    if (l == 0) {
        auto combined = [&](double y) {
            double syc = std::sqrt(y + c);
            double a = 1.0 / ((s1 + syc) * (s1 + syc) * syc);
            double b = 1.0 / std::pow(y + c, 1.5);
            return lam2 * measure_density(dim, y) * (a - b);
        };
        return s1 + 0.5 * integrate_halfline(combined, 1.0, spec).value;
    }
    return -0.5 * integrate_halfline(plain, 1.0, spec).value;
}

double n_point_from_w(const std::vector<std::pair<double, double>>& fw, double lambda) {
    const std::size_t n = fw.size();
    if (n == 0) throw DomainError("empty input");
    if (n == 1) {
        if (lambda == 0.0) throw DomainError("1-point value needs lambda != 0");
        return fw[0].second / (2.0 * lambda);
    }
    double scale = 0;
    for (const auto& [f, w] : fw) scale = std::max(scale, f * f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(fw[i].first * fw[i].first - fw[j].first * fw[j].first) <
                1e-12 * std::max(1.0, scale))
                throw DomainError("coincident shifted eigenvalues; perturb the input");
    // lambda^{N-1} sum_k (W_k / 2 lambda) prod_{l != k} 1/(F_k^2 - F_l^2),
    // with one lambda cancelled so lambda = 0 stays finite
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double term = 0.5 * fw[k].second;
        for (std::size_t l = 0; l < n; ++l) {
            if (l == k) continue;
            term /= fw[k].first * fw[k].first - fw[l].first * fw[l].first;
        }
        total += term;
    }
    double pref = 1.0;
    for (std::size_t i = 0; i + 2 < n; ++i) pref *= lambda;
    return pref * total;
}

} // namespace mft
