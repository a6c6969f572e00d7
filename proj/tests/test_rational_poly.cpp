#include <doctest.h>

#include "mft/json_io.hpp"
#include "mft/moment_polynomial.hpp"

using namespace mft;

TEST_CASE("rational strings stay canonical") {
    CHECK(rat_to_string(rat(4, 6)) == "2/3");
    CHECK(rat_to_string(rat(-4, 6)) == "-2/3");
    CHECK(rat_to_string(rat(7)) == "7");
    CHECK(rat_from_string("6/4") == rat(3, 2));
    CHECK_THROWS_AS(rat(1, 0), DomainError);
}

TEST_CASE("monomial products and sums normalise") {
    // (rho1/rho0)^2
    auto a = MomentPolynomial::monomial({-1, 1}, rat(1), 3);
    auto sq = a * a;
    CHECK(sq == MomentPolynomial::monomial({-2, 2}, rat(1), 3));

    auto p = MomentPolynomial::monomial({0, 2, 1}, rat(5, 3), 3);
    CHECK(p + MomentPolynomial::zero(3) == p);
    CHECK((p - p).is_zero());
}

TEST_CASE("R2 combination from the weighted pieces") {
    int K = 3;
    auto r1r0 = MomentPolynomial::monomial({-1, 1}, rat(1), K);
    auto r2r0 = MomentPolynomial::monomial({-1, 0, 1}, rat(1), K);
    auto r2 = (r1r0 * r1r0).scaled(rat(2, 15)) - r2r0.scaled(rat(4, 21));
    CHECK(r2.coefficient({-2, 2}) == rat(2, 15));
    CHECK(r2.coefficient({-1, 0, 1}) == rat(-4, 21));
    CHECK(r2.term_count() == 2);
}

TEST_CASE("normalisation is idempotent and structural") {
    auto p = MomentPolynomial::monomial({2, 1, 0}, rat(1), 4) +
             MomentPolynomial::monomial({2, 1}, rat(2), 4);
    // trailing zeros trimmed: both monomials are rho0^2 rho1
    CHECK(p.term_count() == 1);
    CHECK(p.coefficient({2, 1}) == rat(3));
    auto q = p + MomentPolynomial::zero(4);
    CHECK(p == q);
}

TEST_CASE("weight grading") {
    CHECK(*MomentPolynomial::monomial({-1, 1}, rat(1), 2).weight() == 1);
    CHECK(*MomentPolynomial::constant(rat(1), 2).weight() == 0);
    CHECK(*MomentPolynomial::monomial({-2, 1, 1}, rat(1), 2).weight() == 3);
    auto mixed = MomentPolynomial::monomial({-1, 1}, rat(1), 2) +
                 MomentPolynomial::constant(rat(1), 2);
    CHECK(!mixed.weight().has_value());
    CHECK_THROWS_AS(MomentPolynomial::zero(2).weight(), DomainError);
}

TEST_CASE("weight is multiplicative for homogeneous inputs") {
    auto a = MomentPolynomial::monomial({-1, 1}, rat(2), 4) +
             MomentPolynomial::monomial({-1, 1}, rat(1), 4);
    auto b = MomentPolynomial::monomial({-2, 1, 1}, rat(-5), 4) +
             MomentPolynomial::monomial({-3, 3}, rat(7, 2), 4);
    CHECK(*(a * b).weight() == *a.weight() + *b.weight());
}

TEST_CASE("budget violations are loud") {
    CHECK_THROWS_AS(MomentPolynomial::monomial({0, 0, 0, 1}, rat(1), 2), BudgetError);
    auto p = MomentPolynomial::monomial({0, 1}, rat(1), 1);
    CHECK_THROWS_AS(p.mul_rho(2, 1), BudgetError);
    CHECK_THROWS_AS(p.mul_rho(1, -1), DomainError);
}

TEST_CASE("json serialisation is deterministic") {
    auto p = MomentPolynomial::monomial({-1, 2}, rat(1, 3), 2) +
             MomentPolynomial::monomial({-2, 0, 1}, rat(-7), 2);
    auto j = to_json(p);
    CHECK(j["terms"].size() == 2);
    CHECK(j["terms"][0]["e"] == std::vector<int>{-2, 0, 1});
    CHECK(j["terms"][0]["c"] == "-7");
    CHECK(to_json(p).dump() == to_json(p).dump());
}
