#include "mft/moment_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace mft {

void MomentPolynomial::trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

void MomentPolynomial::add_term(Exponents e, const Rational& c) {
    if (mft::is_zero(c)) return;
    trim(e);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(std::move(e), c);
    } else {
        it->second += c;
        if (mft::is_zero(it->second)) terms_.erase(it);
    }
}

MomentPolynomial MomentPolynomial::constant(const Rational& c, int budget) {
    MomentPolynomial p(budget);
    p.add_term({}, c);
    return p;
}

MomentPolynomial MomentPolynomial::monomial(Exponents e, const Rational& c, int budget) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] < 0) throw DomainError("negative exponent on rho_" + std::to_string(i));
    trim(e);
    if (static_cast<int>(e.size()) - 1 > budget)
        throw BudgetError("monomial uses rho_" + std::to_string(e.size() - 1) +
                          " beyond budget K=" + std::to_string(budget));
    MomentPolynomial p(budget);
    p.add_term(std::move(e), c);
    return p;
}

MomentPolynomial MomentPolynomial::var(int k, int budget) {
    Exponents e(k + 1, 0);
    e[k] = 1;
    return monomial(std::move(e), rat(1), budget);
}

int MomentPolynomial::max_index() const {
    int m = -1;
    for (const auto& [e, c] : terms_)
        m = std::max(m, static_cast<int>(e.size()) - 1);
    return m;
}

MomentPolynomial MomentPolynomial::with_budget(int budget) const {
    if (max_index() > budget)
        throw BudgetError("polynomial uses rho_" + std::to_string(max_index()) +
                          " beyond budget K=" + std::to_string(budget));
    MomentPolynomial p(budget);
    p.terms_ = terms_;
    return p;
}

MomentPolynomial MomentPolynomial::operator+(const MomentPolynomial& o) const {
    MomentPolynomial out(std::max(budget_, o.budget_));
    out.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MomentPolynomial MomentPolynomial::operator-() const {
    MomentPolynomial out(budget_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

MomentPolynomial MomentPolynomial::operator-(const MomentPolynomial& o) const {
    return *this + (-o);
}

MomentPolynomial MomentPolynomial::operator*(const MomentPolynomial& o) const {
    MomentPolynomial out(std::max(budget_, o.budget_));
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(std::max(e1.size(), e2.size()), 0);
            for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
            for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
            out.add_term(std::move(e), c1 * c2);
        }
    }
    return out;
}

MomentPolynomial MomentPolynomial::scaled(const Rational& c) const {
    MomentPolynomial out(budget_);
    if (mft::is_zero(c)) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

MomentPolynomial MomentPolynomial::derivative(int k) const {
    if (k > budget_)
        throw BudgetError("derivative in rho_" + std::to_string(k) + " beyond budget");
    MomentPolynomial out(budget_);
    for (const auto& [e, c] : terms_) {
        if (k >= static_cast<int>(e.size()) || e[k] == 0) continue;
        Exponents d = e;
        Rational nc = c * rat(d[k]);
        d[k] -= 1;
        out.add_term(std::move(d), nc);
    }
    return out;
}

MomentPolynomial MomentPolynomial::mul_rho(int k, int power) const {
    if (power < 0 && k != 0)
        throw DomainError("negative power only allowed on rho_0");
    if (k > budget_)
        throw BudgetError("rho_" + std::to_string(k) + " beyond budget K=" +
                          std::to_string(budget_));
    MomentPolynomial out(budget_);
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        if (static_cast<int>(d.size()) <= k) d.resize(k + 1, 0);
        d[k] += power;
        if (k != 0 && d[k] < 0) throw DomainError("negative exponent on rho_" + std::to_string(k));
        out.add_term(std::move(d), c);
    }
    return out;
}

std::optional<long> MomentPolynomial::weight() const {
    if (terms_.empty()) throw DomainError("weight of the zero polynomial");
    std::optional<long> w;
    for (const auto& [e, c] : terms_) {
        long tw = 0;
        for (std::size_t i = 1; i < e.size(); ++i) tw += static_cast<long>(i) * e[i];
        if (!w) w = tw;
        else if (*w != tw) return std::nullopt;
    }
    return w;
}

Rational MomentPolynomial::coefficient(const Exponents& e) const {
    Exponents key = e;
    trim(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? rat(0) : it->second;
}

Rational MomentPolynomial::evaluate(const std::vector<Rational>& point) const {
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= point.size()) throw DomainError("evaluation point too short");
            Rational base = point[i];
            int p = e[i];
            if (p < 0) {
                if (mft::is_zero(base)) throw DomainError("pole at rho_0 = 0");
                base = rat(1) / base;
                p = -p;
            }
            for (int j = 0; j < p; ++j) t *= base;
        }
        total += t;
    }
    return total;
}

double MomentPolynomial::evaluate_double(const std::vector<double>& point) const {
    double total = 0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= point.size()) throw DomainError("evaluation point too short");
            t *= std::pow(point[i], e[i]);
        }
        total += t;
    }
    return total;
}

std::string MomentPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(c) << ")";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*rho" << i;
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

namespace {

// all (j_1..j_m) with sum_i j_i = k and sum_i i*j_i = n
void partitions_rec(int n, int k, int i, int m, std::vector<int>& j,
                    const std::function<void(const std::vector<int>&)>& emit) {
    if (i == m) {
        if (n == 0 && k == 0) emit(j);
        return;
    }
    int idx = i + 1;  // part size
    for (int cnt = 0; cnt <= k && cnt * idx <= n; ++cnt) {
        j[i] = cnt;
        partitions_rec(n - cnt * idx, k - cnt, i + 1, m, j, emit);
    }
    j[i] = 0;
}

Rational factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

} // namespace

MomentPolynomial bell_eval(int n, int k, const std::vector<MomentPolynomial>& args,
                           int budget) {
    if (n < 0 || k < 0 || k > n) throw DomainError("Bell polynomial needs 0 <= k <= n");
    if (n == 0 && k == 0) return MomentPolynomial::constant(rat(1), budget);
    if (k == 0 || n == 0) return MomentPolynomial::zero(budget);
    int m = n - k + 1;
    if (static_cast<int>(args.size()) < m)
        throw DomainError("Bell polynomial needs " + std::to_string(m) + " arguments");
    MomentPolynomial out = MomentPolynomial::zero(budget);
    std::vector<int> j(m, 0);
    partitions_rec(n, k, 0, m, j, [&](const std::vector<int>& part) {
        Rational coeff = factorial(n);
        MomentPolynomial mono = MomentPolynomial::constant(rat(1), budget);
        for (int i = 0; i < m; ++i) {
            if (part[i] == 0) continue;
            coeff /= factorial(part[i]);
            Rational fi = factorial(i + 1);
            for (int c = 0; c < part[i]; ++c) {
                coeff /= fi;
                mono = mono * args[i];
            }
        }
        out = out + mono.scaled(coeff);
    });
    return out;
}

MomentPolynomial bell_polynomial(int n, int k, int budget) {
    if (n < 0 || k < 0 || k > n) throw DomainError("Bell polynomial needs 0 <= k <= n");
    if (n == 0 && k == 0) return MomentPolynomial::constant(rat(1), budget);
    if (k == 0 || n == 0) return MomentPolynomial::zero(budget);
    int m = n - k + 1;
    std::vector<MomentPolynomial> xs;
    xs.reserve(m);
    for (int i = 1; i <= m; ++i) xs.push_back(MomentPolynomial::var(i, budget));
    return bell_eval(n, k, xs, budget);
}

} // namespace mft
