#include "mft/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "mft/series.hpp"

namespace mft {

LaurentExpr LaurentExpr::monomial(std::vector<std::string> vars, std::vector<int> zexp,
                                  MomentPolynomial coeff, long lambda_exp) {
    if (zexp.size() != vars.size()) throw DomainError("exponent/variable length mismatch");
    LaurentExpr e(std::move(vars), lambda_exp);
    e.add_term(std::move(zexp), coeff);
    return e;
}

int LaurentExpr::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    throw DomainError("unknown variable " + name);
}

bool LaurentExpr::has_var(const std::string& name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

void LaurentExpr::add_term(std::vector<int> zexp, const MomentPolynomial& coeff) {
    if (coeff.is_zero()) return;
    if (zexp.size() != vars_.size()) throw DomainError("exponent length mismatch");
    auto it = terms_.find(zexp);
    if (it == terms_.end()) {
        terms_.emplace(std::move(zexp), coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentExpr LaurentExpr::aligned(const std::vector<std::string>& vars) const {
    std::vector<int> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end()) throw DomainError("alignment drops variable " + vars_[i]);
        pos[i] = static_cast<int>(it - vars.begin());
    }
    LaurentExpr out(vars, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        out.add_term(std::move(ne), c);
    }
    return out;
}

namespace {
std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}
} // namespace

LaurentExpr LaurentExpr::operator+(const LaurentExpr& o) const {
    if (is_zero()) {
        LaurentExpr out = o.aligned(merge_vars(vars_, o.vars_));
        return out;
    }
    if (o.is_zero()) return aligned(merge_vars(vars_, o.vars_));
    if (lambda_exp_ != o.lambda_exp_)
        throw ConsistencyError("adding mixed lambda powers: " +
                               std::to_string(lambda_exp_) + " vs " +
                               std::to_string(o.lambda_exp_));
    auto vars = merge_vars(vars_, o.vars_);
    LaurentExpr out = aligned(vars);
    LaurentExpr rhs = o.aligned(vars);
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

LaurentExpr LaurentExpr::operator-() const {
    LaurentExpr out(vars_, lambda_exp_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

LaurentExpr LaurentExpr::operator-(const LaurentExpr& o) const { return *this + (-o); }

LaurentExpr LaurentExpr::operator*(const LaurentExpr& o) const {
    auto vars = merge_vars(vars_, o.vars_);
    LaurentExpr a = aligned(vars), b = o.aligned(vars);
    LaurentExpr out(vars, lambda_exp_ + o.lambda_exp_);
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) {
            std::vector<int> e(vars.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            out.add_term(std::move(e), c1 * c2);
        }
    return out;
}

LaurentExpr LaurentExpr::scaled(const Rational& c) const {
    LaurentExpr out(vars_, lambda_exp_);
    if (mft::is_zero(c)) return out;
    for (const auto& [e, p] : terms_) out.terms_.emplace(e, p.scaled(c));
    return out;
}

LaurentExpr LaurentExpr::scaled_poly(const MomentPolynomial& p) const {
    LaurentExpr out(vars_, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        MomentPolynomial q = c * p;
        if (!q.is_zero()) out.add_term(e, q);
    }
    return out;
}

LaurentExpr LaurentExpr::mul_var(const std::string& name, int power) const {
    int i = var_index(name);
    LaurentExpr out(vars_, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne = e;
        ne[i] += power;
        out.add_term(std::move(ne), c);
    }
    return out;
}

LaurentExpr LaurentExpr::mul_lambda(long dexp, const Rational& c) const {
    LaurentExpr out = scaled(c);
    out.lambda_exp_ = lambda_exp_ + dexp;
    return out;
}

bool LaurentExpr::operator==(const LaurentExpr& o) const {
    if (is_zero() && o.is_zero()) return true;
    if (lambda_exp_ != o.lambda_exp_) return false;
    auto vars = merge_vars(vars_, o.vars_);
    return aligned(vars).terms_ == o.aligned(vars).terms_;
}

LaurentExpr LaurentExpr::derivative(const std::string& name) const {
    int i = var_index(name);
    LaurentExpr out(vars_, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        std::vector<int> ne = e;
        int p = ne[i]--;
        out.add_term(std::move(ne), c.scaled(rat(p)));
    }
    return out;
}

LaurentExpr LaurentExpr::substitute(const std::string& src, const std::string& dst) const {
    int i = var_index(src);
    int j = var_index(dst);
    std::vector<std::string> nv;
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (static_cast<int>(k) != i) nv.push_back(vars_[k]);
    LaurentExpr out(nv, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (static_cast<int>(k) == i) continue;
            int v = e[k];
            if (static_cast<int>(k) == j) v += e[i];
            ne.push_back(v);
        }
        out.add_term(std::move(ne), c);
    }
    return out;
}

LaurentExpr LaurentExpr::rename(const std::string& src, const std::string& dst) const {
    if (has_var(dst)) throw DomainError("rename target already present: " + dst);
    LaurentExpr out = *this;
    out.vars_[out.var_index(src)] = dst;
    return out;
}

LaurentExpr LaurentExpr::residue_at_zero(const std::string& name) const {
    int i = var_index(name);
    std::vector<std::string> nv;
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (static_cast<int>(k) != i) nv.push_back(vars_[k]);
    LaurentExpr out(nv, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        if (e[i] != -1) continue;
        std::vector<int> ne;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (static_cast<int>(k) != i) ne.push_back(e[k]);
        out.add_term(std::move(ne), c);
    }
    return out;
}

bool LaurentExpr::odd_in(const std::string& name) const {
    int i = var_index(name);
    for (const auto& [e, c] : terms_)
        if ((e[i] % 2 + 2) % 2 != 1) return false;
    return true;
}

bool LaurentExpr::symmetric_under_swap(const std::string& a, const std::string& b) const {
    int i = var_index(a), j = var_index(b);
    LaurentExpr sw(vars_, lambda_exp_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne = e;
        std::swap(ne[i], ne[j]);
        sw.add_term(std::move(ne), c);
    }
    return sw == *this;
}

int LaurentExpr::min_exponent(const std::string& name) const {
    int i = var_index(name);
    int m = 0;
    bool any = false;
    for (const auto& [e, c] : terms_) {
        if (!any || e[i] < m) m = e[i];
        any = true;
    }
    return m;
}

int LaurentExpr::max_exponent(const std::string& name) const {
    int i = var_index(name);
    int m = 0;
    bool any = false;
    for (const auto& [e, c] : terms_) {
        if (!any || e[i] > m) m = e[i];
        any = true;
    }
    return m;
}

std::string LaurentExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os << "lambda^" << lambda_exp_ << " * [ ";
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << vars_[i] << "^" << e[i];
        }
    }
    os << " ]";
    return os.str();
}

LaurentExpr khat_apply(const LaurentExpr& e, const std::string& var) {
    int i = e.var_index(var);
    int budget = 0;
    for (const auto& [ze, c] : e.terms()) budget = std::max(budget, c.budget());
    LaurentExpr out(e.vars(), e.lambda_exp());
    for (const auto& [ze, c] : e.terms()) {
        int p = ze[i];
        if (p >= 0 || (-p) % 2 == 0 || p == -1)
            throw DomainError("khat needs odd powers <= -3 in " + var +
                              ", got exponent " + std::to_string(p));
        int n = (-p - 3) / 2;
        if (n > c.budget())
            throw BudgetError("khat needs rho_" + std::to_string(n) + " beyond budget");
        for (int k = 0; k <= n; ++k) {
            std::vector<int> ne = ze;
            ne[i] = -(2 * n + 2 - 2 * k);
            out.add_term(std::move(ne), c.mul_rho(k, 1));
        }
    }
    return out;
}

LaurentExpr khat_inverse(const LaurentExpr& f, const std::string& var) {
    int i = f.var_index(var);
    int kmax = 0;
    for (const auto& [ze, c] : f.terms()) {
        int p = ze[i];
        if (p > 0 || (-p) % 2 != 0)
            throw DomainError("khat_inverse needs even non-positive powers of " + var);
        kmax = std::max(kmax, -p / 2);
    }
    int budget = 0;
    for (const auto& [ze, c] : f.terms()) budget = std::max(budget, c.budget());
    budget = std::max(budget, kmax);
    auto S = s_weights(kmax, budget);
    std::vector<Rational> inv_fact{rat(1)};
    Rational fact(1);
    for (int j = 1; j <= kmax; ++j) {
        fact *= j;
        inv_fact.push_back(rat(1) / fact);
    }
    LaurentExpr out(f.vars(), f.lambda_exp());
    for (const auto& [ze, c] : f.terms()) {
        int k = -ze[i] / 2;
        for (int j = 0; j <= k; ++j) {
            std::vector<int> ne = ze;
            ne[i] = -(2 * k - 2 * j + 2);
            MomentPolynomial coeff =
                (c.with_budget(budget) * S[j]).mul_rho(0, -1).scaled(inv_fact[j]);
            out.add_term(std::move(ne), coeff);
        }
    }
    return out;
}

} // namespace mft
