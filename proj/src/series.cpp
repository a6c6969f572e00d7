#include "mft/series.hpp"

namespace mft {

FormalSeries series_multiply(const FormalSeries& a, const FormalSeries& b) {
    int order = std::min(a.order(), b.order());
    if (order < 0) throw DomainError("empty series");
    int budget = std::max(a.coeffs[0].budget(), b.coeffs[0].budget());
    FormalSeries out;
    out.coeffs.assign(order + 1, MomentPolynomial::zero(budget));
    for (int m = 0; m <= order; ++m)
        for (int i = 0; i <= m; ++i)
            out.coeffs[m] = out.coeffs[m] + a.coeffs[i] * b.coeffs[m - i];
    return out;
}

FormalSeries series_reciprocal(const FormalSeries& s) {
    if (s.coeffs.empty()) throw DomainError("empty series");
    const MomentPolynomial& lead = s.coeffs[0];
    if (lead.is_zero() || lead.term_count() != 1)
        throw DomainError("leading coefficient not an invertible monomial");
    const auto& [le, lc] = *lead.terms().begin();
    for (std::size_t i = 1; i < le.size(); ++i)
        if (le[i] != 0)
            throw DomainError("leading coefficient not invertible in the rho_0 cone");
    int e0 = le.empty() ? 0 : le[0];
    int budget = lead.budget();
    MomentPolynomial inv_lead =
        MomentPolynomial::monomial({-e0}, rat(1) / lc, budget);

    FormalSeries out;
    out.coeffs.assign(s.order() + 1, MomentPolynomial::zero(budget));
    out.coeffs[0] = inv_lead;
    for (int m = 1; m <= s.order(); ++m) {
        MomentPolynomial acc = MomentPolynomial::zero(budget);
        for (int i = 1; i <= m; ++i) acc = acc + s.coeffs[i] * out.coeffs[m - i];
        out.coeffs[m] = (-acc) * inv_lead;
    }
    return out;
}

FormalSeries moment_ratio_series(int order, int budget) {
    FormalSeries s;
    for (int l = 0; l <= order; ++l) {
        Exponents e(l + 1, 0);
        e[0] = -1;
        if (l > 0) e[l] = 1;
        else e[0] = 0;  // rho_0/rho_0 = 1
        s.coeffs.push_back(MomentPolynomial::monomial(std::move(e), rat(1), budget));
    }
    return s;
}

std::vector<MomentPolynomial> s_weights(int max_m, int budget) {
    FormalSeries rec = series_reciprocal(moment_ratio_series(max_m, budget));
    std::vector<MomentPolynomial> out;
    Rational fact(1);
    for (int m = 0; m <= max_m; ++m) {
        if (m > 0) fact *= m;
        out.push_back(rec.coeffs[m].scaled(fact));
    }
    return out;
}

std::vector<MomentPolynomial> r_weights(int max_m, int budget) {
    auto S = s_weights(std::max(0, max_m - 1), budget);
    std::vector<MomentPolynomial> out;
    out.push_back(MomentPolynomial::zero(budget));
    Rational fact(1);
    std::vector<Rational> inv_fact{rat(1)};
    for (int m = 1; m <= max_m; ++m) {
        fact *= m;
        inv_fact.push_back(rat(1) / fact);
    }
    for (int m = 1; m <= max_m; ++m) {
        MomentPolynomial acc = MomentPolynomial::zero(budget);
        for (int k = 1; k <= m; ++k) {
            Rational coeff = rat(-2, 3) * rat(k) / rat(3 + 2 * k) * inv_fact[m - k];
            acc = acc + S[m - k].mul_rho(k, 1).mul_rho(0, -1).scaled(coeff);
        }
        out.push_back(acc);
    }
    return out;
}

} // namespace mft
