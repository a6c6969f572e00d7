#include "mft/multirational.hpp"

#include <algorithm>

namespace mft {

namespace {
std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}
} // namespace

void ZPoly::add_term(std::vector<int> e, const MomentPolynomial& c) {
    if (c.is_zero()) return;
    for (int v : e)
        if (v < 0) throw DomainError("ZPoly exponents must be non-negative");
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(std::move(e), c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

ZPoly ZPoly::aligned(const std::vector<std::string>& nv) const {
    std::vector<int> pos(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = std::find(nv.begin(), nv.end(), vars[i]);
        if (it == nv.end()) throw DomainError("ZPoly alignment drops " + vars[i]);
        pos[i] = static_cast<int>(it - nv.begin());
    }
    ZPoly out;
    out.vars = nv;
    for (const auto& [e, c] : terms) {
        std::vector<int> ne(nv.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        out.add_term(std::move(ne), c);
    }
    return out;
}

ZPoly zp_zero(std::vector<std::string> vars) {
    ZPoly p;
    p.vars = std::move(vars);
    return p;
}

ZPoly zp_const(std::vector<std::string> vars, const Rational& c) {
    ZPoly p = zp_zero(std::move(vars));
    p.add_term(std::vector<int>(p.vars.size(), 0), MomentPolynomial::constant(c, 0));
    return p;
}

ZPoly zp_monomial(std::vector<std::string> vars, std::vector<int> e, MomentPolynomial c) {
    ZPoly p = zp_zero(std::move(vars));
    p.add_term(std::move(e), std::move(c));
    return p;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    auto vars = merge_vars(a.vars, b.vars);
    ZPoly out = a.aligned(vars);
    ZPoly rhs = b.aligned(vars);
    for (const auto& [e, c] : rhs.terms) out.add_term(e, c);
    return out;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    auto vars = merge_vars(a.vars, b.vars);
    ZPoly x = a.aligned(vars), y = b.aligned(vars);
    ZPoly out = zp_zero(vars);
    for (const auto& [e1, c1] : x.terms)
        for (const auto& [e2, c2] : y.terms) {
            std::vector<int> e(vars.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            out.add_term(std::move(e), c1 * c2);
        }
    return out;
}

ZPoly zp_neg(const ZPoly& a) {
    ZPoly out = zp_zero(a.vars);
    for (const auto& [e, c] : a.terms) out.terms.emplace(e, -c);
    return out;
}

ZPoly zp_derivative(const ZPoly& a, const std::string& var) {
    auto it = std::find(a.vars.begin(), a.vars.end(), var);
    if (it == a.vars.end()) return zp_zero(a.vars);
    std::size_t i = it - a.vars.begin();
    ZPoly out = zp_zero(a.vars);
    for (const auto& [e, c] : a.terms) {
        if (e[i] == 0) continue;
        std::vector<int> ne = e;
        int p = ne[i]--;
        out.add_term(std::move(ne), c.scaled(rat(p)));
    }
    return out;
}

MultiRational mr_from_laurent(const LaurentExpr& e) {
    MultiRational out;
    out.lambda_exp = e.lambda_exp();
    out.num = zp_zero(e.vars());
    // common denominator: per-variable max negative exponent
    std::vector<int> depth(e.vars().size(), 0);
    for (const auto& [ze, c] : e.terms())
        for (std::size_t i = 0; i < ze.size(); ++i)
            depth[i] = std::max(depth[i], -ze[i]);
    for (const auto& [ze, c] : e.terms()) {
        std::vector<int> ne(ze.size());
        for (std::size_t i = 0; i < ze.size(); ++i) ne[i] = ze[i] + depth[i];
        out.num.add_term(std::move(ne), c);
    }
    out.den = zp_monomial(e.vars(), depth, MomentPolynomial::constant(rat(1), 0));
    return out;
}

MultiRational mr_g0b2(const std::string& a, const std::string& b) {
    // 4 lambda^2 / (a b (a+b)^2)
    std::vector<std::string> vars{a, b};
    MultiRational out;
    out.lambda_exp = 2;
    out.num = zp_const(vars, rat(4));
    ZPoly apb = zp_add(zp_monomial(vars, {1, 0}, MomentPolynomial::constant(rat(1), 0)),
                       zp_monomial(vars, {0, 1}, MomentPolynomial::constant(rat(1), 0)));
    out.den = zp_mul(zp_monomial(vars, {1, 1}, MomentPolynomial::constant(rat(1), 0)),
                     zp_mul(apb, apb));
    return out;
}

MultiRational mr_add(const MultiRational& x, const MultiRational& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.lambda_exp != y.lambda_exp)
        throw ConsistencyError("adding mixed lambda powers in rational layer");
    MultiRational out;
    out.lambda_exp = x.lambda_exp;
    out.num = zp_add(zp_mul(x.num, y.den), zp_mul(y.num, x.den));
    out.den = zp_mul(x.den, y.den);
    return out;
}

MultiRational mr_mul(const MultiRational& x, const MultiRational& y) {
    MultiRational out;
    out.lambda_exp = x.lambda_exp + y.lambda_exp;
    out.num = zp_mul(x.num, y.num);
    out.den = zp_mul(x.den, y.den);
    return out;
}

MultiRational mr_scale(const MultiRational& x, const Rational& c, long dlambda) {
    MultiRational out = x;
    ZPoly n = zp_zero(out.num.vars);
    for (const auto& [e, p] : out.num.terms) n.add_term(e, p.scaled(c));
    out.num = std::move(n);
    out.lambda_exp += dlambda;
    return out;
}

MultiRational mr_div_poly(const MultiRational& x, const ZPoly& d) {
    MultiRational out = x;
    out.den = zp_mul(out.den, d);
    return out;
}

MultiRational mr_derivative(const MultiRational& x, const std::string& var) {
    MultiRational out;
    out.lambda_exp = x.lambda_exp;
    out.num = zp_add(zp_mul(zp_derivative(x.num, var), x.den),
                     zp_neg(zp_mul(x.num, zp_derivative(x.den, var))));
    out.den = zp_mul(x.den, x.den);
    return out;
}

namespace {

std::string zvar(int i) { return "z" + std::to_string(i); }

// correlation function as a rational object in its variables
MultiRational corr_rational(KontsevichCache& cache, int g,
                            const std::vector<std::string>& vars) {
    int b = static_cast<int>(vars.size());
    if (g == 0 && b == 2) return mr_g0b2(vars[0], vars[1]);
    CorrelationFn f = cache.correlation(g, b);
    LaurentExpr body = f.body;
    // rename canonical z1..zb to the requested names (two passes to avoid
    // collisions)
    for (int i = 0; i < b; ++i) body = body.rename(zvar(i + 1), "##tmp" + std::to_string(i));
    for (int i = 0; i < b; ++i) body = body.rename("##tmp" + std::to_string(i), vars[i]);
    return mr_from_laurent(body);
}

// correlation function with a repeated first variable G_g(z,z,rest...)
MultiRational corr_diagonal(KontsevichCache& cache, int g, const std::string& z,
                            const std::vector<std::string>& rest) {
    if (g == 0 && rest.empty()) {
        // diagonal of the unstable seed: lambda^2 / z^4
        MultiRational out;
        out.lambda_exp = 2;
        out.num = zp_const({z}, rat(1));
        out.den = zp_monomial({z}, {4}, MomentPolynomial::constant(rat(1), 0));
        return out;
    }
    std::vector<std::string> vars{z, "##diag"};
    vars.insert(vars.end(), rest.begin(), rest.end());
    int b = static_cast<int>(vars.size());
    CorrelationFn f = cache.correlation(g, b);
    LaurentExpr body = f.body;
    for (int i = 0; i < b; ++i) body = body.rename(zvar(i + 1), "##tmp" + std::to_string(i));
    for (int i = 0; i < b; ++i) body = body.rename("##tmp" + std::to_string(i), vars[i]);
    body = body.substitute("##diag", z);
    return mr_from_laurent(body);
}

} // namespace

MultiRational loop_equation_residual(int g, int b) {
    if (2 - 2 * g - b >= 0)
        throw DomainError("loop equation residual needs 2-2g-b < 0");
    KontsevichCache cache;
    std::vector<std::string> J;
    for (int i = 2; i <= b; ++i) J.push_back(zvar(i));
    const std::string z1 = zvar(1);

    std::vector<std::string> all{z1};
    all.insert(all.end(), J.begin(), J.end());

    // K_{z1} G_g(z1, J)
    CorrelationFn f = cache.correlation(g, b);
    MultiRational total = mr_from_laurent(khat_apply(f.body, z1));

    // lambda * G_{g-1}(z1, z1, J)
    if (g >= 1) {
        MultiRational t = corr_diagonal(cache, g - 1, z1, J);
        total = mr_add(total, mr_scale(t, rat(1), 1));
    }

    // lambda * sum' over splittings of (genus, J)
    for (int h = 0; h <= g; ++h) {
        int nsub = 1 << J.size();
        for (int mask = 0; mask < nsub; ++mask) {
            std::vector<std::string> I, Ic;
            for (std::size_t j = 0; j < J.size(); ++j)
                ((mask >> j) & 1 ? I : Ic).push_back(J[j]);
            if (h == 0 && I.empty()) continue;          // excluded (0, empty)
            if (h == g && I.size() == J.size()) continue;  // excluded (g, J)
            std::vector<std::string> va{z1}, vb{z1};
            va.insert(va.end(), I.begin(), I.end());
            vb.insert(vb.end(), Ic.begin(), Ic.end());
            MultiRational t = mr_mul(corr_rational(cache, h, va),
                                     corr_rational(cache, g - h, vb));
            total = mr_add(total, mr_scale(t, rat(1), 1));
        }
    }

    // (2 lambda)^3 sum_{zeta in J} (1/zeta) d/dzeta
    //   [G_g(z1, J\zeta) - G_g(zeta, J\zeta)] / (z1^2 - zeta^2)
    for (const auto& zeta : J) {
        std::vector<std::string> rest;
        for (const auto& v : J)
            if (v != zeta) rest.push_back(v);
        std::vector<std::string> va{z1}, vb{zeta};
        va.insert(va.end(), rest.begin(), rest.end());
        vb.insert(vb.end(), rest.begin(), rest.end());
        MultiRational diff =
            mr_add(corr_rational(cache, g, va), mr_scale(corr_rational(cache, g, vb), rat(-1)));
        std::vector<std::string> pv{z1, zeta};
        ZPoly denom = zp_add(
            zp_monomial(pv, {2, 0}, MomentPolynomial::constant(rat(1), 0)),
            zp_monomial(pv, {0, 2}, MomentPolynomial::constant(rat(-1), 0)));
        MultiRational q = mr_div_poly(diff, denom);
        MultiRational dq = mr_derivative(q, zeta);
        dq = mr_div_poly(dq, zp_monomial({zeta}, {1}, MomentPolynomial::constant(rat(1), 0)));
        total = mr_add(total, mr_scale(dq, rat(8), 3));
    }

    return total;
}

} // namespace mft
