#include <doctest.h>

#include <cmath>

#include "mft/special_functions.hpp"

using namespace mft;

namespace {
constexpr double kPi = 3.14159265358979323846;

// independent zeta(2) via Euler-Maclaurin tail: sum_{n<=N} 1/n^2 + 1/N
// - 1/(2N^2) + 1/(6N^3)
double zeta2_oracle() {
    const int N = 2000;
    double s = 0;
    for (int n = 1; n <= N; ++n) s += 1.0 / (static_cast<double>(n) * n);
    return s + 1.0 / N - 0.5 / (static_cast<double>(N) * N) +
           1.0 / (6.0 * std::pow(static_cast<double>(N), 3));
}

// eta(2) by Euler transformation of the alternating series
double eta2_oracle() {
    // van Wijngaarden averaging of partial sums
    const int M = 40;
    std::vector<double> row(M);
    double s = 0;
    for (int n = 0; n < M; ++n) {
        double term = 1.0 / (static_cast<double>(n + 1) * (n + 1));
        s += (n % 2 == 0) ? term : -term;
        row[n] = s;
    }
    for (int k = 1; k < M; ++k)
        for (int n = 0; n < M - k; ++n) row[n] = 0.5 * (row[n] + row[n + 1]);
    return row[0];
}

} // namespace

TEST_CASE("dilog special values against series oracles") {
    CHECK(dilog(0.0) == 0.0);
    CHECK(dilog(1.0) == doctest::Approx(zeta2_oracle()).epsilon(1e-12));
    CHECK(dilog(-1.0) == doctest::Approx(-eta2_oracle()).epsilon(1e-12));
    CHECK_THROWS_AS(dilog(1.0 + 1e-12), DomainError);
}

TEST_CASE("dilog reflection identity") {
    for (double x : {0.1, 0.25, 0.4, 0.5, 0.66, 0.83, 0.97}) {
        double lhs = dilog(x) + dilog(1.0 - x);
        double rhs = kPi * kPi / 6.0 - std::log(x) * std::log(1.0 - x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("dilog deep negative arguments via inversion") {
    // Li2(-x) + Li2(-1/x) = -pi^2/6 - log(x)^2/2
    for (double x : {2.0, 5.0, 40.0, 1234.5}) {
        double lhs = dilog(-x) + dilog(-1.0 / x);
        double rhs = -kPi * kPi / 6.0 - 0.5 * std::log(x) * std::log(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("hypergeometric basics") {
    CHECK(hyp2f1(0.3, 0.7, 2.0, 0.0) == 1.0);
    for (double x : {0.5, 3.0, 50.0})
        CHECK(hyp2f1(0.0, 1.0, 2.0, -x) == 1.0);
    CHECK_THROWS_AS(hyp2f1(0.3, 0.7, 0.0, -1.0), DomainError);
    CHECK_THROWS_AS(hyp2f1(0.3, 0.7, 2.0, 0.5), DomainError);
}

TEST_CASE("hypergeometric against the Euler integral") {
    // 2F1(a,b;c;x) = 1/B(b, c-b) * int_0^1 t^{b-1}(1-t)^{c-b-1}(1-xt)^{-a}
    double a = 0.3, b = 0.7, c = 2.0, x = -5.0;
    auto integrand = [&](double t) {
        return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) *
               std::pow(1.0 - x * t, -a);
    };
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    double integral = integrate_interval(integrand, 0.0, 1.0, spec).value;
    double beta = std::tgamma(b) * std::tgamma(c - b) / std::tgamma(c);
    CHECK(hyp2f1(a, b, c, x) == doctest::Approx(integral / beta).epsilon(1e-10));
}

TEST_CASE("hypergeometric contiguous relation on the working family") {
    // (c-a) F(a-1,b) + (2a-c+(b-a)x) F(a,b) + a(x-1) F(a+1,b) = 0
    for (double lambda : {0.05, 0.2, 0.3}) {
        double alpha = std::asin(lambda * kPi) / kPi;
        for (double x : {-0.3, -2.0, -17.0}) {
            double a = alpha, b = 1.0 - alpha, c = 2.0;
            double r = (c - a) * hyp2f1(a - 1.0, b, c, x) +
                       (2.0 * a - c + (b - a) * x) * hyp2f1(a, b, c, x) +
                       a * (x - 1.0) * hyp2f1(a + 1.0, b, c, x);
            CHECK(std::fabs(r) < 1e-10);
        }
    }
}

TEST_CASE("half-line quadrature on closed forms") {
    QuadratureSpec spec;
    auto r1 = integrate_halfline([](double t) { return 1.0 / ((1 + t) * (1 + t)); }, 0.0, spec);
    CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(std::fabs(r1.value - 1.0) <= std::max(r1.error_estimate, 1e-12));

    auto r2 = integrate_halfline([](double t) { return std::exp(-t); }, 0.0, spec);
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(std::fabs(r2.value - 1.0) <= std::max(r2.error_estimate, 1e-12));

    auto r3 = integrate_halfline([](double t) { return t / std::pow(1.0 + t, 4); }, 0.0, spec);
    CHECK(r3.value == doctest::Approx(1.0 / 6.0).epsilon(1e-11));
    CHECK(std::fabs(r3.value - 1.0 / 6.0) <= std::max(r3.error_estimate, 1e-12));
}

TEST_CASE("quadrature reports unreachable tolerances") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-16;
    tight.abs_tol = 1e-300;
    tight.max_depth = 2;
    CHECK_THROWS_AS(
        integrate_interval([](double t) { return std::sqrt(std::fabs(t - 0.3141)); }, 0.0,
                           1.0, tight),
        ToleranceError);
}

TEST_CASE("exact combinatorics") {
    CHECK(catalan_number(0) == 1);
    CHECK(catalan_number(3) == 5);
    CHECK(catalan_number(10) == 16796);
    CHECK(double_factorial(5) == 15);  // (2*2+1)!!
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(binomial(7, 2) == 21);
    // d_2 = C(3k+1, k)/(k+1) at k = 2
    CHECK(binomial(7, 2) / 3 == 7);
}
