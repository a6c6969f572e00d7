#include "mft/kontsevich.hpp"

#include <algorithm>

#include "mft/series.hpp"

namespace mft {

namespace {

std::string zvar(int i) { return "z" + std::to_string(i); }

Rational pow2(long e) {
    Rational r(1);
    for (long i = 0; i < e; ++i) r *= 2;
    return r;
}

Rational double_factorial_odd(int i) {
    // (2i+1)!!
    Rational r(1);
    for (int j = 1; j <= 2 * i + 1; j += 2) r *= j;
    return r;
}

} // namespace

CorrelationFn seed_g0b2() {
    CorrelationFn f;
    f.genus = 0;
    f.vars = {zvar(1), zvar(2)};
    f.body = LaurentExpr(f.vars, 2);
    f.unstable_b2 = true;
    return f;
}

CorrelationFn seed_g0b3(int budget) {
    CorrelationFn f;
    f.genus = 0;
    f.vars = {zvar(1), zvar(2), zvar(3)};
    f.body = LaurentExpr::monomial(
        f.vars, {-3, -3, -3},
        MomentPolynomial::monomial({-1}, rat(-32), budget), 5);
    return f;
}

CorrelationFn seed_g1b1(int budget) {
    CorrelationFn f;
    f.genus = 1;
    f.vars = {zvar(1)};
    LaurentExpr body(f.vars, 3);
    body.add_term({-3}, MomentPolynomial::monomial({-2, 1}, rat(1), budget));
    body.add_term({-5}, MomentPolynomial::monomial({-1}, rat(-1), budget));
    f.body = body;
    return f;
}

namespace {

// Adag^g_{J,z} acting on a Laurent body, without the (2 lambda)^3 factor.
LaurentExpr adag_body(const LaurentExpr& body, int genus,
                      const std::vector<std::string>& J, const std::string& z) {
    int top = 3 * genus - 3 + static_cast<int>(J.size());
    int maxidx = 0;
    for (const auto& [e, c] : body.terms()) maxidx = std::max(maxidx, c.max_index());
    if (maxidx > top)
        throw BudgetError("boundary creation: body depends on rho_" +
                          std::to_string(maxidx) + " > 3g-3+|J| = " + std::to_string(top));
    int budget = top + 1;

    std::vector<std::string> vars = body.vars();
    vars.push_back(z);
    LaurentExpr out(vars, body.lambda_exp());
    auto lift = [&](const std::vector<int>& e, int zexp) {
        std::vector<int> ne = e;
        ne.push_back(zexp);
        return ne;
    };
    for (const auto& [e, c] : body.terms()) {
        MomentPolynomial cb = c.with_budget(budget);
        for (int l = 0; l <= std::min(top, cb.max_index()); ++l) {
            MomentPolynomial d = cb.derivative(l);
            if (d.is_zero()) continue;
            out.add_term(lift(e, -3),
                         d.mul_rho(l + 1, 1).mul_rho(0, -1).scaled(rat(-(3 + 2 * l))));
            out.add_term(lift(e, -(5 + 2 * l)), d.scaled(rat(3 + 2 * l)));
        }
        for (std::size_t j = 0; j < body.vars().size(); ++j) {
            int p = e[j];
            if (p == 0) continue;
            std::vector<int> ne = e;
            ne[j] -= 2;
            out.add_term(lift(ne, -3), cb.mul_rho(0, -1).scaled(rat(p)));
        }
    }
    return out;
}

} // namespace

CorrelationFn boundary_create(const CorrelationFn& f, const std::string& z) {
    for (const auto& v : f.vars)
        if (v == z) throw DomainError("new boundary variable already present: " + z);
    if (f.unstable_b2) {
        // closed-form step out of the unstable seed:
        // (2l)^3 Adag applied to the (z1+z2)^-2 pole collapses to the
        // genus-0 three-boundary seed.
        CorrelationFn g = seed_g0b3();
        g.vars = {f.vars[0], f.vars[1], z};
        g.body = LaurentExpr::monomial(
            g.vars, {-3, -3, -3},
            MomentPolynomial::monomial({-1}, rat(-32), 0), 5);
        return g;
    }
    CorrelationFn out;
    out.genus = f.genus;
    out.vars = f.vars;
    out.vars.push_back(z);
    out.body = adag_body(f.body, f.genus, f.vars, z).mul_lambda(3, rat(8));
    return out;
}

CorrelationFn boundary_create(const FreeEnergy& f, const std::string& z, int budget) {
    CorrelationFn out;
    out.genus = f.genus;
    out.vars = {z};
    if (f.log_token) {
        // d/d rho0 of the token is -1/(24 rho0)
        LaurentExpr body({z}, 3);
        body.add_term({-3}, MomentPolynomial::monomial({-2, 1}, rat(1), budget));
        body.add_term({-5}, MomentPolynomial::monomial({-1}, rat(-1), budget));
        out.body = body;
        return out;
    }
    LaurentExpr val = LaurentExpr::monomial({}, {}, f.poly.scaled(pow2(f.two_lambda_exp)),
                                            f.two_lambda_exp);
    out.body = adag_body(val, f.genus, {}, z).mul_lambda(3, rat(8));
    return out;
}

LaurentExpr boundary_annihilate(const LaurentExpr& f, const std::string& var) {
    int i = f.var_index(var);
    std::vector<std::string> nv;
    for (std::size_t k = 0; k < f.vars().size(); ++k)
        if (static_cast<int>(k) != i) nv.push_back(f.vars()[k]);
    LaurentExpr out(nv, f.lambda_exp());
    for (const auto& [e, c] : f.terms()) {
        int m = e[i];
        if (-m - 5 < 0 || (-m - 5) % 2 != 0) continue;
        int l = (-m - 5) / 2;
        std::vector<int> ne;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (static_cast<int>(k) != i) ne.push_back(e[k]);
        out.add_term(std::move(ne), c.mul_rho(l, 1).scaled(rat(-1, 3 + 2 * l)));
    }
    return out;
}

LaurentExpr euler_grading(const LaurentExpr& f) {
    LaurentExpr out(f.vars(), f.lambda_exp());
    for (const auto& [e, c] : f.terms()) {
        MomentPolynomial acc = MomentPolynomial::zero(c.budget());
        for (int l = 0; l <= c.max_index(); ++l) {
            MomentPolynomial d = c.derivative(l);
            if (!d.is_zero()) acc = acc - d.mul_rho(l, 1);
        }
        if (!acc.is_zero()) out.add_term(e, acc);
    }
    return out;
}

const CorrelationFn& KontsevichCache::one_point(int g) {
    auto it = one_point_.find(g);
    if (it != one_point_.end()) return it->second;
    if (g < 1) throw DomainError("one_point needs genus >= 1");
    if (g == 1) return one_point_.emplace(1, seed_g1b1(3 * g - 2)).first->second;

    const std::string w = "w", w2 = "w2";

    // sum over genus splittings plus the once-degenerated lower genus
    LaurentExpr bracket({w}, 4 * g - 2);
    for (int h = 1; h <= g - 1; ++h) {
        LaurentExpr a = one_point(h).body.rename(zvar(1), w);
        LaurentExpr b = one_point(g - h).body.rename(zvar(1), w);
        bracket = bracket + a * b;
    }
    {
        CorrelationFn gm1 = one_point(g - 1);
        gm1.body = gm1.body.rename(zvar(1), w);
        gm1.vars = {w};
        CorrelationFn two = boundary_create(gm1, w2);
        bracket = bracket + two.body.substitute(w2, w);
    }

    LaurentExpr shifted = bracket.mul_var(w, 2);
    for (const auto& [e, c] : shifted.terms())
        if (e[0] > 0 || (-e[0]) % 2 != 0)
            throw ConsistencyError("one_point: bracket is not an even Laurent "
                                   "polynomial bounded at infinity");
    LaurentExpr inv = khat_inverse(shifted, w);
    LaurentExpr body = (-inv.mul_var(w, -1)).mul_lambda(1, rat(1)).rename(w, zvar(1));

    CorrelationFn out;
    out.genus = g;
    out.vars = {zvar(1)};
    out.body = body;
    return one_point_.emplace(g, std::move(out)).first->second;
}

const CorrelationFn& KontsevichCache::correlation(int g, int b) {
    auto key = std::make_pair(g, b);
    auto it = corr_.find(key);
    if (it != corr_.end()) return it->second;
    if (b < 1) throw DomainError("correlation needs b >= 1");
    if (g == 0 && b < 2) throw DomainError("genus 0 needs b >= 2");
    CorrelationFn cur;
    if (g == 0) {
        cur = seed_g0b2();
        for (int i = 3; i <= b; ++i) cur = boundary_create(cur, zvar(i));
    } else {
        cur = one_point(g);
        for (int i = 2; i <= b; ++i) cur = boundary_create(cur, zvar(i));
    }
    return corr_.emplace(key, std::move(cur)).first->second;
}

CorrelationFn one_point(int g) {
    KontsevichCache cache;
    return cache.one_point(g);
}

CorrelationFn correlation(int g, int b) {
    KontsevichCache cache;
    return cache.correlation(g, b);
}

namespace {

const Rational& f2_coeff(int which) {
    static const Rational c13 = rat(-21, 160);
    static const Rational c12 = rat(29, 128);
    static const Rational c3 = rat(-35, 384);
    switch (which) {
        case 0: return c13;
        case 1: return c12;
        default: return c3;
    }
}

MomentPolynomial f2_polynomial(int budget) {
    MomentPolynomial p = MomentPolynomial::zero(budget);
    p = p + MomentPolynomial::monomial({-5, 3}, f2_coeff(0), budget);
    p = p + MomentPolynomial::monomial({-4, 1, 1}, f2_coeff(1), budget);
    p = p + MomentPolynomial::monomial({-3, 0, 0, 1}, f2_coeff(2), budget);
    return p;
}

} // namespace

MomentPolynomial laplacian_delta_rho(const MomentPolynomial& f) {
    if (f.is_zero()) return f;
    int maxidx = std::max(1, f.max_index());
    int budget = 2 * maxidx + 4;
    auto R = r_weights(2 * maxidx + 3, budget);
    auto mono = [&](Exponents e, const Rational& c) {
        return MomentPolynomial::monomial(std::move(e), c, budget);
    };
    MomentPolynomial fb = f.with_budget(budget);
    MomentPolynomial out = MomentPolynomial::zero(budget);

    MomentPolynomial d0 = fb.derivative(0);
    MomentPolynomial d00 = d0.derivative(0);
    if (!d00.is_zero()) {
        MomentPolynomial c = mono({-3, 3}, rat(6, 5)) + mono({-2, 1, 1}, rat(-111, 70)) +
                             mono({-1, 0, 0, 1}, rat(1, 2));
        out = out + c * d00;
    }
    if (!d0.is_zero()) {
        MomentPolynomial c = mono({-4, 3}, rat(-2)) + mono({-3, 1, 1}, rat(1097, 280)) +
                             mono({-2, 0, 0, 1}, rat(-41, 24));
        out = out + c * d0;
    }
    for (int k = 1; k <= maxidx; ++k) {
        MomentPolynomial dk0 = fb.derivative(k).derivative(0);
        if (dk0.is_zero()) continue;
        MomentPolynomial c =
            (mono({-3, 2}, rat(-2, 5)) + mono({-2, 0, 1}, rat(2, 7))).mul_rho(k + 1, 1) -
            R[k + 2].mul_rho(1, 1).mul_rho(0, -1).scaled(rat(3, 2)) +
            R[k + 3].scaled(rat(3, 2));
        out = out - c.scaled(rat(3 + 2 * k)) * dk0;
    }
    for (int k = 1; k <= maxidx; ++k) {
        MomentPolynomial dk = fb.derivative(k);
        if (dk.is_zero()) continue;
        for (int l = 1; l <= maxidx; ++l) {
            MomentPolynomial dkl = dk.derivative(l);
            if (dkl.is_zero()) continue;
            MomentPolynomial c =
                mono({-3, 1}, rat(1, 30)).mul_rho(l + 1, 1).mul_rho(k + 1, 1) +
                R[l + 2].mul_rho(k + 1, 1).mul_rho(0, -1).scaled(rat(1, 4)) +
                R[k + 2].mul_rho(l + 1, 1).mul_rho(0, -1).scaled(rat(1, 4)) -
                R[k + l + 3].scaled(rat(1, 4));
            out = out + c.scaled(rat((3 + 2 * k) * (3 + 2 * l))) * dkl;
        }
    }
    for (int k = 1; k <= maxidx; ++k) {
        MomentPolynomial dk = fb.derivative(k);
        if (dk.is_zero()) continue;
        MomentPolynomial c =
            (mono({-4, 2}, rat(19, 60)) + mono({-3, 0, 1}, rat(-25, 84))).mul_rho(k + 1, 1) +
            R[k + 2].mul_rho(1, 1).mul_rho(0, -2).scaled(rat(1, 16)) -
            R[k + 3].mul_rho(0, -1).scaled(rat(1, 16)) -
            mono({-3, 1}, rat(5 + 2 * k, 30)).mul_rho(k + 2, 1) -
            R[k + 3].mul_rho(0, -1).scaled(rat(5 + 2 * k, 2));
        out = out - c.scaled(rat(3 + 2 * k)) * dk;
    }
    return out;
}

FreeEnergy free_energy(int g, FreeEnergyRoute route) {
    if (g < 1) throw DomainError("free energy needs genus >= 1");
    FreeEnergy out;
    out.genus = g;
    if (g == 1) {
        out.log_token = true;
        out.poly = MomentPolynomial::zero(0);
        out.two_lambda_exp = 0;
        return out;
    }
    out.two_lambda_exp = 4L * g - 4;
    if (route == FreeEnergyRoute::annihilate) {
        KontsevichCache cache;
        const CorrelationFn& gp = cache.one_point(g);
        LaurentExpr ann = boundary_annihilate(gp.body, zvar(1));
        // divide by (2g-2)(2 lambda)^3 and unfold the remaining 2-powers
        Rational scale = rat(1, 8 * (2 * g - 2)) / pow2(out.two_lambda_exp);
        MomentPolynomial poly = MomentPolynomial::zero(3 * g - 3);
        for (const auto& [e, c] : ann.terms()) poly = poly + c.with_budget(3 * g - 3);
        out.poly = poly.scaled(scale);
        return out;
    }
    // laplacian route: Z_g = (1/(g-1)!)(-Delta + F2)^{g-1} 1, then peel off
    // the lower free energies through the Bell recombination.
    int budget = 3 * g - 3;
    std::vector<MomentPolynomial> Zg;  // Zg[h] for genus h >= 2
    MomentPolynomial p2 = f2_polynomial(budget);
    MomentPolynomial cur = MomentPolynomial::constant(rat(1), budget);
    Rational fact(1);
    for (int h = 2; h <= g; ++h) {
        cur = (p2.with_budget(cur.budget() + 4) * cur - laplacian_delta_rho(cur));
        fact *= (h - 1);
        Zg.push_back(cur.scaled(rat(1) / fact));
    }
    std::vector<MomentPolynomial> F;  // F[h-2] = F_h
    for (int h = 2; h <= g; ++h) {
        MomentPolynomial val = Zg[h - 2];
        Rational hfact(1);
        for (int i = 2; i <= h - 1; ++i) hfact *= i;
        for (int k = 2; k <= h - 1; ++k) {
            std::vector<MomentPolynomial> args;
            for (int j = 1; j <= h - k; ++j) {
                Rational jf(1);
                for (int i = 2; i <= j; ++i) jf *= i;
                args.push_back(F[j - 1].scaled(jf));
            }
            val = val - bell_eval(h - 1, k, args, val.budget()).scaled(rat(1) / hfact);
        }
        F.push_back(val);
    }
    out.poly = F[g - 2].with_budget(budget);
    return out;
}

FreeEnergy free_energy_checked(int g) {
    FreeEnergy a = free_energy(g, FreeEnergyRoute::annihilate);
    if (g == 1) return a;
    FreeEnergy b = free_energy(g, FreeEnergyRoute::laplacian);
    if (!(a.poly == b.poly))
        throw ConsistencyError("free energy routes disagree at genus " + std::to_string(g) +
                               ": annihilate " + a.poly.to_string() + " vs laplacian " +
                               b.poly.to_string());
    return a;
}

namespace {

void partitions_of(int n, int max_part, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_of(n - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace

IntersectionTable intersection_numbers(int g) {
    if (g < 2) throw DomainError("intersection table needs genus >= 2");
    FreeEnergy fg = free_energy(g, FreeEnergyRoute::laplacian);
    int top = 3 * g - 2;  // largest tau index
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_of(3 * g - 3, 3 * g - 3, cur, parts);

    IntersectionTable table;
    table.genus = g;
    std::size_t consumed = 0;
    std::vector<std::pair<std::vector<int>, Rational>> entries;
    for (const auto& part : parts) {
        // exponent vector (k_2, ..., k_{3g-2}); part entries are (i-1)
        std::vector<int> k(top - 1, 0);
        for (int p : part) k[p - 1] += 1;
        long ksum = 0;
        for (int v : k) ksum += v;
        Exponents mono(top, 0);
        mono[0] = -(2 * g - 2 + static_cast<int>(ksum));
        for (int i = 2; i <= top; ++i) mono[i - 1] = k[i - 2];
        Rational coeff = fg.poly.coefficient(mono);
        if (is_zero(coeff))
            throw ConsistencyError("intersection extraction: missing monomial for a "
                                   "partition of 3g-3");
        consumed += 1;
        Rational value = coeff;
        for (int i = 2; i <= top; ++i) {
            if (k[i - 2] == 0) continue;
            Rational kfact(1);
            for (int j = 2; j <= k[i - 2]; ++j) kfact *= j;
            Rational dfac = double_factorial_odd(i - 1);  // (2i-1)!!
            Rational denom(1);
            for (int j = 0; j < k[i - 2]; ++j) denom *= -dfac;
            value = value * kfact / denom;
        }
        entries.emplace_back(k, value);
    }
    if (consumed != fg.poly.term_count())
        throw ConsistencyError("intersection extraction: leftover monomials in F_g");
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    table.entries = std::move(entries);
    return table;
}

// ---- deformed Virasoro ----

TruncatedZ truncated_z(int gmax) {
    if (gmax < 1) throw DomainError("truncation needs gmax >= 1");
    int budget = std::max(1, 3 * gmax - 3);
    TruncatedZ z;
    z.gmax = gmax;
    std::vector<MomentPolynomial> E(gmax, MomentPolynomial::zero(budget));
    for (int g = 2; g <= gmax; ++g)
        E[g - 1] = free_energy(g, FreeEnergyRoute::laplacian).poly.with_budget(budget);
    z.w.assign(gmax, MomentPolynomial::zero(budget));
    z.w[0] = MomentPolynomial::constant(rat(1), budget);
    for (int m = 1; m <= gmax - 1; ++m) {
        MomentPolynomial acc = MomentPolynomial::zero(budget);
        for (int j = 1; j <= m; ++j)
            acc = acc + E[j].scaled(rat(j)) * z.w[m - j];
        z.w[m] = acc.scaled(rat(1, m));
    }
    return z;
}

namespace {

struct VirasoroOps {
    bool with_token;  // conjugate d/d rho0 by rho0^{-1/24}

    MomentPolynomial d(const MomentPolynomial& f, int k) const {
        MomentPolynomial out = f.derivative(k);
        if (k == 0 && with_token)
            out = out - f.mul_rho(0, -1).scaled(rat(1, 24));
        return out;
    }

    MomentPolynomial dhat(const MomentPolynomial& f) const {
        int top = std::max(0, f.max_index());
        MomentPolynomial out = MomentPolynomial::zero(f.budget());
        for (int l = 0; l <= top; ++l) {
            MomentPolynomial dl = d(f, l);
            if (dl.is_zero()) continue;
            out = out + dl.mul_rho(l + 1, 1).mul_rho(0, -1).scaled(rat(3 + 2 * l));
        }
        return out;
    }

    MomentPolynomial first_order(int n, const MomentPolynomial& f) const {
        MomentPolynomial out = MomentPolynomial::zero(f.budget());
        if (n == 0) {
            out = f.scaled(rat(1, 16));
            for (int l = 0; l <= std::max(0, f.max_index()); ++l) {
                MomentPolynomial dl = d(f, l);
                if (dl.is_zero()) continue;
                out = out + dl.mul_rho(l, 1).scaled(rat(3 + 2 * l, 2));
            }
            return out;
        }
        for (int l = 0; l + n <= f.max_index(); ++l) {
            MomentPolynomial dl = f.derivative(l + n);
            if (dl.is_zero()) continue;
            out = out + dl.mul_rho(l, 1).scaled(rat(3 + 2 * n + 2 * l, 2));
        }
        return out;
    }

    MomentPolynomial deformation(int n, const MomentPolynomial& f) const {
        if (n == 0) return MomentPolynomial::zero(f.budget());
        if (n == 1) return dhat(dhat(f));
        MomentPolynomial out = MomentPolynomial::zero(f.budget());
        for (int l = 0; l <= n - 3; ++l) {
            MomentPolynomial t = d(d(f, n - 3 - l), l);
            if (t.is_zero()) continue;
            out = out + t.scaled(rat((3 + 2 * l) * (2 * n - 2 * l - 3)));
        }
        out = out - d(dhat(f), n - 2).scaled(rat(2 * (2 * n - 1)));
        return out;
    }
};

} // namespace

VirasoroReport virasoroapply_impl(int n, const TruncatedZ& z) {
    if (n < 0) throw DomainError("Virasoro index must be >= 0");
    int budget = z.w.empty() ? 1 : z.w[0].budget();
    int opb = budget + n + 3;
    VirasoroOps ops{true};
    VirasoroReport rep;
    rep.n = n;
    for (int m = 0; m <= z.gmax - 1; ++m) {
        MomentPolynomial res = ops.first_order(n, z.w[m].with_budget(opb));
        if (m >= 1) {
            MomentPolynomial def = ops.deformation(n, z.w[m - 1].with_budget(opb));
            res = res + def.scaled(rat(1, 4));
        }
        rep.determined_orders.push_back(m);
        rep.residuals.push_back(res);
        if (!res.is_zero()) rep.all_zero = false;
    }
    rep.excluded_orders = {z.gmax, z.gmax + 1};
    return rep;
}

VirasoroReport virasoro_apply(int n, const TruncatedZ& z) {
    return virasoroapply_impl(n, z);
}

MomentPolynomial virasoro_generator(int n, const MomentPolynomial& f, const Rational& A) {
    VirasoroOps ops{false};
    int opb = f.budget() + n + 3;
    MomentPolynomial fb = f.with_budget(opb);
    return ops.first_order(n, fb) + ops.deformation(n, fb).scaled(A);
}

} // namespace mft
