#include <doctest.h>

#include "mft/kontsevich.hpp"

using namespace mft;

namespace {

// printed F_2 in the (2 lambda)^4 normalisation
MomentPolynomial f2_reference(int budget = 3) {
    return MomentPolynomial::monomial({-5, 3}, rat(-21, 160), budget) +
           MomentPolynomial::monomial({-4, 1, 1}, rat(29, 128), budget) +
           MomentPolynomial::monomial({-3, 0, 0, 1}, rat(-35, 384), budget);
}

} // namespace

TEST_CASE("seeds match their closed forms") {
    CorrelationFn g1 = seed_g1b1();
    CHECK(g1.body.lambda_exp() == 3);
    CHECK(g1.body.terms().at({-3}) == MomentPolynomial::monomial({-2, 1}, rat(1), 1));
    CHECK(g1.body.terms().at({-5}) == MomentPolynomial::monomial({-1}, rat(-1), 1));

    CorrelationFn g03 = seed_g0b3();
    CHECK(g03.body.lambda_exp() == 5);
    CHECK(g03.body.terms().at({-3, -3, -3}) ==
          MomentPolynomial::monomial({-1}, rat(-32), 0));

    CHECK(seed_g0b2().unstable_b2);
}

TEST_CASE("boundary creation from the genus-1 log token") {
    FreeEnergy f1 = free_energy(1, FreeEnergyRoute::annihilate);
    CHECK(f1.log_token);
    CorrelationFn created = boundary_create(f1, "z1", 1);
    CHECK(created.body == seed_g1b1().body);
}

TEST_CASE("boundary creation commutes") {
    CorrelationFn g1 = one_point(1);
    CorrelationFn ab = boundary_create(boundary_create(g1, "a"), "b");
    CorrelationFn ba = boundary_create(boundary_create(g1, "b"), "a");
    CHECK(ab.body == ba.body.aligned(ab.body.vars()));
}

TEST_CASE("boundary creation on a constant without moments vanishes") {
    CorrelationFn flat;
    flat.genus = 1;
    flat.vars = {};
    LaurentExpr b({}, 0);
    b.add_term({}, MomentPolynomial::constant(rat(5), 3));
    // constant coefficient: no rho nor zeta dependence survives
    flat.body = b;
    CorrelationFn out = boundary_create(flat, "z");
    CHECK(out.body.is_zero());
}

TEST_CASE("boundary annihilation residues") {
    LaurentExpr f({"z"}, 0);
    f.add_term({-3}, MomentPolynomial::constant(rat(1), 2));
    CHECK(boundary_annihilate(f, "z").is_zero());
    LaurentExpr f5({"z"}, 0);
    f5.add_term({-5}, MomentPolynomial::constant(rat(1), 2));
    LaurentExpr a = boundary_annihilate(f5, "z");
    CHECK(a.terms().at({}) == MomentPolynomial::var(0, 2).scaled(rat(-1, 3)));
    LaurentExpr c({"z"}, 0);
    c.add_term({-1}, MomentPolynomial::constant(rat(1), 2));
    CHECK(boundary_annihilate(c, "z").is_zero());
}

TEST_CASE("one_point(1) equals the seed") {
    CorrelationFn g = one_point(1);
    CHECK(g.body == seed_g1b1(1).body);
}

TEST_CASE("annihilation of z-free expressions is trivial") {
    // the free energies carry no boundary variable, so the annihilator
    // returns zero on them by construction
    LaurentExpr f({"z"}, 4);
    f.add_term({0}, MomentPolynomial::monomial({-2, 3}, rat(5, 7), 3));
    CHECK(boundary_annihilate(f, "z").is_zero());
}

TEST_CASE("one_point(3) keeps the homogeneous shape") {
    CorrelationFn g3 = one_point(3);
    CHECK(g3.body.lambda_exp() == 11);
    CHECK(g3.body.odd_in("z1"));
    CHECK(g3.body.min_exponent("z1") == -(2 * 7 + 3));
    for (const auto& [e, c] : g3.body.terms()) {
        int k = (-e[0] - 3) / 2;
        auto shifted = c.mul_rho(0, 5);
        CHECK(*shifted.weight() == 7 - k);
    }
}

TEST_CASE("one_point(2) has the predicted shape") {
    CorrelationFn g2 = one_point(2);
    CHECK(g2.body.lambda_exp() == 7);
    CHECK(g2.body.odd_in("z1"));
    CHECK(g2.body.min_exponent("z1") == -11);
    CHECK(g2.body.max_exponent("z1") == -3);
    for (const auto& [e, c] : g2.body.terms()) {
        int k = (-e[0] - 3) / 2;
        // coefficient is (2l)^7 P_{4-k}/rho0^3 with P weighted
        auto shifted = c.mul_rho(0, 3);
        if (k < 4) CHECK(*shifted.weight() == 4 - k);
    }
}

TEST_CASE("correlation reductions to seeds") {
    CHECK(correlation(0, 3).body == seed_g0b3().body);
    CHECK(correlation(1, 1).body == seed_g1b1(1).body);
    CHECK(correlation(0, 2).unstable_b2);
}

TEST_CASE("correlations are odd and symmetric") {
    for (auto [g, b] : std::vector<std::pair<int, int>>{{0, 3}, {1, 2}, {1, 3}, {2, 2}}) {
        CorrelationFn f = correlation(g, b);
        for (const auto& v : f.vars) CHECK(f.body.odd_in(v));
        for (std::size_t i = 0; i + 1 < f.vars.size(); ++i)
            CHECK(f.body.symmetric_under_swap(f.vars[i], f.vars[i + 1]));
    }
}

TEST_CASE("euler grading counts 2g+b-2") {
    for (auto [g, b] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {2, 1}}) {
        CorrelationFn f = correlation(g, b);
        LaurentExpr counted = euler_grading(f.body);
        CHECK(counted == f.body.scaled(rat(2 * g + b - 2)));
    }
}

TEST_CASE("annihilation closes the boundary ladder") {
    // A G_g(.,z2..zb) = (2 lambda)^3 (2g+b-3) G_g(z2..zb), indices shifted
    for (auto [g, b] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}}) {
        CorrelationFn big = correlation(g, b);
        LaurentExpr ann = boundary_annihilate(big.body, "z1");
        // relabel z_{i+1} -> z_i to compare with the canonical smaller one
        for (int i = 2; i <= b; ++i) ann = ann.rename("z" + std::to_string(i), "y" + std::to_string(i - 1));
        for (int i = 1; i < b; ++i) ann = ann.rename("y" + std::to_string(i), "z" + std::to_string(i));
        CorrelationFn small = correlation(g, b - 1);
        LaurentExpr expect = small.body.mul_lambda(3, rat(8 * (2 * g + b - 3)));
        CHECK(ann == expect.aligned(ann.vars()));
    }
}

TEST_CASE("F2 exact by both routes") {
    FreeEnergy a = free_energy(2, FreeEnergyRoute::annihilate);
    FreeEnergy b = free_energy(2, FreeEnergyRoute::laplacian);
    CHECK(a.poly == f2_reference());
    CHECK(b.poly == f2_reference(b.poly.budget()));
    CHECK(a.two_lambda_exp == 4);
    FreeEnergy checked = free_energy_checked(2);
    CHECK(checked.poly == f2_reference());
}

TEST_CASE("annihilation kills the free energies") {
    // A_z ((2 lambda)^3 Adag_z F_g) = N F_g and F_g is weight-homogeneous of
    // rho-degree 0, so the annihilator applied to G_g/(2g-2)... reproduces
    // F_g; equivalently A_z of the 1-point function matches (2g-2) F_g and
    // the defining property A F_g = 0 holds through the grading identity.
    for (int g : {2, 3}) {
        FreeEnergy f = free_energy(g, FreeEnergyRoute::laplacian);
        // N F_g = (2g-2) F_g is the annihilation closure statement for the
        // vacuum: check the grading directly.
        MomentPolynomial nf = MomentPolynomial::zero(f.poly.budget());
        for (int l = 0; l <= f.poly.max_index(); ++l) {
            auto d = f.poly.derivative(l);
            if (!d.is_zero()) nf = nf - d.mul_rho(l, 1);
        }
        CHECK(nf == f.poly.scaled(rat(2 * g - 2)));
    }
}

TEST_CASE("laplacian operator basics") {
    CHECK(laplacian_delta_rho(MomentPolynomial::constant(rat(1), 3)).is_zero());
    // F3 = -(1/2) Delta F2 reproduces the genus-3 listing via the
    // intersection extraction below
    FreeEnergy f2 = free_energy(2, FreeEnergyRoute::laplacian);
    MomentPolynomial f3 = laplacian_delta_rho(f2.poly).scaled(rat(-1, 2));
    FreeEnergy f3route = free_energy(3, FreeEnergyRoute::laplacian);
    CHECK(f3.with_budget(6) == f3route.poly.with_budget(6));
}

TEST_CASE("free energy routes agree at genus 3") {
    FreeEnergy a = free_energy(3, FreeEnergyRoute::annihilate);
    FreeEnergy b = free_energy(3, FreeEnergyRoute::laplacian);
    CHECK(a.poly.with_budget(7) == b.poly.with_budget(7));
    CHECK(a.two_lambda_exp == 8);
}

TEST_CASE("intersection numbers at genus 2 and 3") {
    IntersectionTable t2 = intersection_numbers(2);
    CHECK(t2.entries.size() == 3);  // p(3)
    for (const auto& [k, v] : t2.entries) CHECK(sgn(v) > 0);

    IntersectionTable t3 = intersection_numbers(3);
    CHECK(t3.entries.size() == 11);  // p(6)
    // <tau_2^6> leads in reverse-lexicographic order
    CHECK(t3.entries.front().first.front() == 6);
    CHECK(t3.entries.front().second == rat(1225, 144));
    // <tau_7> has k_7 = 1 and comes last
    CHECK(t3.entries.back().first.back() == 1);
    CHECK(t3.entries.back().second == rat(1, 82944));
}

TEST_CASE("budget guard on creation") {
    CorrelationFn g2 = one_point(2);  // needs rho_0..rho_4
    CorrelationFn hacked = g2;
    // claim a lower genus so the operator range is too small for the body
    hacked.genus = 1;
    CHECK_THROWS_AS(boundary_create(hacked, "w"), BudgetError);
}
