#include "mft/special_functions.hpp"

#include <cmath>
#include <limits>

#include "mft/errors.hpp"

namespace mft {

namespace {

constexpr double kPi = 3.14159265358979323846;

// direct series, |x| <= 1/2
double dilog_series(double x) {
    double sum = 0, term = x;
    for (int k = 1; k < 200; ++k) {
        sum += term / (static_cast<double>(k) * k);
        term *= x;
        if (std::fabs(term) < 1e-18 * (1 + std::fabs(sum))) break;
    }
    return sum;
}

} // namespace

double dilog(double x) {
    if (x > 1.0) throw DomainError("dilog defined for x <= 1");
    if (x == 1.0) return kPi * kPi / 6.0;
    if (x == 0.0) return 0.0;
    if (x < -1.0) {
        // inversion to (-1, 0)
        double lx = std::log(-x);
        return -kPi * kPi / 6.0 - 0.5 * lx * lx - dilog(1.0 / x);
    }
    if (x > 0.5) {
        // reflection onto [0, 1/2)
        return kPi * kPi / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
    }
    if (x < -0.5) {
        // Landen transform into (1/3, 1/2)
        double y = x / (x - 1.0);
        double l = std::log1p(-x);
        return -dilog(y) - 0.5 * l * l;
    }
    return dilog_series(x);
}

namespace {

double hyp2f1_series(double a, double b, double c, double x) {
    // c must not be a non-positive integer
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 200000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        double next = sum + term;
        if (next == sum) return sum;
        sum = next;
        if (!std::isfinite(sum))
            throw ToleranceError("hypergeometric series diverged", sum);
    }
    throw ToleranceError("hypergeometric series did not converge; partial sum kept", sum);
}

bool near_nonpositive_integer(double v) {
    return v <= 1e-12 && std::fabs(v - std::round(v)) < 1e-12;
}

} // namespace

double hyp2f1(double a, double b, double c, double x) {
    if (near_nonpositive_integer(c))
        throw DomainError("2F1 undefined for non-positive integer c");
    if (x > 0)
        throw DomainError("2F1 implemented for x <= 0 only");
    if (x == 0.0) return 1.0;
    if (a == 0.0 || b == 0.0) return 1.0;
    if (x >= -0.5) return hyp2f1_series(a, b, c, x);
    double ab = a - b;
    bool ab_integer = std::fabs(ab - std::round(ab)) < 1e-9;
    if (x < -50.0 && !ab_integer) {
        // inversion to argument 1/x; needs a - b away from the integers
        if (a > b) std::swap(a, b);
        double g1 = std::tgamma(c) * std::tgamma(b - a) /
                    (std::tgamma(b) * std::tgamma(c - a));
        double g2 = std::tgamma(c) * std::tgamma(a - b) /
                    (std::tgamma(a) * std::tgamma(c - b));
        double inv = 1.0 / x;
        double t1 = g1 * std::pow(-x, -a) * hyp2f1_series(a, a - c + 1.0, a - b + 1.0, inv);
        double t2 = g2 * std::pow(-x, -b) * hyp2f1_series(b, b - c + 1.0, b - a + 1.0, inv);
        return t1 + t2;
    }
    // Pfaff transformation: argument x/(x-1) lies in (0,1)
    double w = x / (x - 1.0);
    if (a <= b)
        return std::pow(1.0 - x, -a) * hyp2f1_series(a, c - b, c, w);
    return std::pow(1.0 - x, -b) * hyp2f1_series(c - a, b, c, w);
}

namespace {

// Gauss-Kronrod 15-point pair (7-point Gauss embedded).
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int* evals) {
    double hl = 0.5 * (b - a), mid = 0.5 * (a + b);
    double fc = f(mid);
    *evals += 15;
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double dx = hl * kXgk[j];
        double f1 = f(mid - dx), f2 = f(mid + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * hl;
    p.error = std::fabs((resk - resg) * hl);
    return p;
}

} // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0) || !(spec.abs_tol > 0) || spec.max_depth < 1)
        throw DomainError("invalid quadrature spec");
    QuadratureResult res;
    struct Item {
        Panel p;
        int depth;
    };
    std::vector<Item> stack;
    stack.push_back({gk15(f, a, b, &res.evaluations), 0});
    double total = stack[0].p.value;
    for (;;) {
        // tolerance check against the running total
        double err = 0;
        for (const auto& it : stack) err += it.p.error;
        double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (err <= tol) {
            res.value = total;
            res.error_estimate = err;
            return res;
        }
        // split the worst panel
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].p.error > stack[worst].p.error) worst = i;
        Item it = stack[worst];
        if (it.depth >= spec.max_depth)
            throw ToleranceError("quadrature tolerance not met", err);
        stack.erase(stack.begin() + static_cast<long>(worst));
        double mid = 0.5 * (it.p.a + it.p.b);
        Item left{gk15(f, it.p.a, mid, &res.evaluations), it.depth + 1};
        Item right{gk15(f, mid, it.p.b, &res.evaluations), it.depth + 1};
        total += left.p.value + right.p.value - it.p.value;
        stack.push_back(left);
        stack.push_back(right);
        if (stack.size() > 20000)
            throw ToleranceError("quadrature panel budget exceeded", err);
    }
}

QuadratureResult integrate_halfline(const std::function<double(double)>& f, double a,
                                    const QuadratureSpec& spec) {
    // t = a + u/(1-u) maps (0,1) to (a, inf); dt = du/(1-u)^2
    auto g = [&](double u) {
        double om = 1.0 - u;
        double t = a + u / om;
        return f(t) / (om * om);
    };
    return integrate_interval(g, 0.0, 1.0, spec);
}

Integer factorial_int(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Integer catalan_number(int n) {
    if (n < 0) throw DomainError("catalan_number needs n >= 0");
    // Segner recurrence
    std::vector<Integer> c(n + 1);
    c[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Integer s = 0;
        for (int m = 0; m < k; ++m) s += c[m] * c[k - 1 - m];
        c[k] = s;
    }
    return c[n];
}

Integer double_factorial(int n) {
    if (n < -1) throw DomainError("double factorial needs n >= -1");
    Integer f = 1;
    for (int i = n; i >= 2; i -= 2) f *= i;
    return f;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

} // namespace mft
