#include "mft/catalan.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mft/errors.hpp"
#include "mft/special_functions.hpp"

namespace mft {

bool is_catalan_tuple(const std::vector<int>& e) {
    if (e.empty()) return false;
    int k = static_cast<int>(e.size()) - 1;
    int sum = 0;
    for (int v : e) {
        if (v < 0) return false;
        sum += v;
    }
    if (sum != k) return false;
    int partial = 0;
    for (int l = 0; l < k; ++l) {
        partial += e[l];
        if (partial <= l) return false;
    }
    return true;
}

CatalanTuple make_catalan_tuple(std::vector<int> e) {
    if (!is_catalan_tuple(e)) {
        std::ostringstream os;
        os << "not a Catalan tuple: (";
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
        os << ")";
        throw DomainError(os.str());
    }
    return CatalanTuple{std::move(e)};
}

std::vector<CatalanTuple> enumerate_tuples(int k) {
    std::vector<CatalanTuple> out;
    std::vector<int> cur;
    std::function<void(int, int, int)> rec = [&](int pos, int rem, int partial) {
        if (pos == k) {
            if (rem == 0) {
                auto e = cur;
                e.push_back(0);
                out.push_back(CatalanTuple{std::move(e)});
            }
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            if (partial + v > pos) {
                cur.push_back(v);
                rec(pos + 1, rem - v, partial + v);
                cur.pop_back();
            }
        }
    };
    if (k == 0) return {CatalanTuple{{0}}};
    rec(0, k, 0);
    return out;
}

std::vector<int> CatalanTable::length_tuple() const {
    std::vector<int> lt;
    lt.push_back(1 + pockets[0].len());
    for (std::size_t j = 1; j < pockets.size(); ++j) lt.push_back(pockets[j].len());
    return lt;
}

CatalanTable make_catalan_table(std::vector<CatalanTuple> pockets) {
    if (pockets.empty()) throw DomainError("empty Catalan table");
    CatalanTable t{std::move(pockets)};
    if (!is_catalan_tuple(t.length_tuple()))
        throw DomainError("pocket lengths do not form a Catalan tuple");
    return t;
}

namespace {

// p_l = -l + sum_{j<=l} e_j, sigma_a = min{ l : p_l = a }; p_k = 0 is
// included so the bullet factorisation works for e_0 = 1.
int sigma(const std::vector<int>& e, int a) {
    int partial = 0;
    for (int l = 0; l < static_cast<int>(e.size()); ++l) {
        partial += e[l];
        if (partial - l == a) return l;
    }
    throw DomainError("sigma index not found");
}

} // namespace

CatalanTuple compose(ComposeKind kind, const CatalanTuple& a, const CatalanTuple& b) {
    std::vector<int> e;
    if (kind == ComposeKind::circ) {
        e = a.e;
        e[0] += 1;
        e.insert(e.end(), b.e.begin(), b.e.end());
    } else if (kind == ComposeKind::bullet) {
        e.push_back(a.e[0] + 1);
        e.insert(e.end(), b.e.begin(), b.e.end());
        e.insert(e.end(), a.e.begin() + 1, a.e.end());
    } else {
        throw DomainError("tuple composition is circ or bullet");
    }
    return make_catalan_tuple(std::move(e));
}

std::pair<CatalanTuple, CatalanTuple> decompose_tuple(ComposeKind kind,
                                                      const CatalanTuple& x) {
    if (x.len() < 1) throw DomainError("tuple of length 0 has no factors");
    if (kind == ComposeKind::circ) {
        int s = sigma(x.e, 1);
        std::vector<int> a(x.e.begin(), x.e.begin() + s + 1);
        a[0] -= 1;
        std::vector<int> b(x.e.begin() + s + 1, x.e.end());
        if (b.empty()) b.push_back(0);
        return {make_catalan_tuple(std::move(a)), make_catalan_tuple(std::move(b))};
    }
    if (kind == ComposeKind::bullet) {
        int s = sigma(x.e, x.e[0] - 1);
        std::vector<int> a;
        a.push_back(x.e[0] - 1);
        a.insert(a.end(), x.e.begin() + s + 1, x.e.end());
        std::vector<int> b(x.e.begin() + 1, x.e.begin() + s + 1);
        if (b.empty()) b.push_back(0);
        return {make_catalan_tuple(std::move(a)), make_catalan_tuple(std::move(b))};
    }
    throw DomainError("tuple decomposition is circ or bullet");
}

CatalanTable compose(ComposeKind kind, const CatalanTable& a, const CatalanTable& b) {
    std::vector<CatalanTuple> p;
    if (kind == ComposeKind::lozenge) {
        p.push_back(compose(ComposeKind::circ, a.pockets[0], b.pockets[0]));
        p.insert(p.end(), a.pockets.begin() + 1, a.pockets.end());
        p.insert(p.end(), b.pockets.begin() + 1, b.pockets.end());
    } else if (kind == ComposeKind::blacklozenge) {
        p.push_back(a.pockets[0]);
        p.push_back(compose(ComposeKind::bullet, a.pockets[1], b.pockets[0]));
        p.insert(p.end(), b.pockets.begin() + 1, b.pockets.end());
        p.insert(p.end(), a.pockets.begin() + 2, a.pockets.end());
    } else {
        throw DomainError("table composition is lozenge or blacklozenge");
    }
    return make_catalan_table(std::move(p));
}

std::pair<CatalanTable, CatalanTable> decompose_table(ComposeKind kind,
                                                      const CatalanTable& x) {
    if (kind == ComposeKind::lozenge) {
        if (x.pockets[0].len() < 1)
            throw DomainError("no lozenge factors: zeroth pocket is (0)");
        auto [e0, f0] = decompose_tuple(ComposeKind::circ, x.pockets[0]);
        int khat = sigma(x.length_tuple(), 1 + f0.len());
        std::vector<CatalanTuple> pa{e0}, pb{f0};
        for (int j = 1; j <= khat; ++j) pa.push_back(x.pockets[j]);
        for (int j = khat + 1; j <= x.len(); ++j) pb.push_back(x.pockets[j]);
        return {make_catalan_table(std::move(pa)), make_catalan_table(std::move(pb))};
    }
    if (kind == ComposeKind::blacklozenge) {
        if (x.len() < 1 || x.pockets[1].len() < 1)
            throw DomainError("no blacklozenge factors: first pocket is (0)");
        auto [e1, f0] = decompose_tuple(ComposeKind::bullet, x.pockets[1]);
        // the f-block keeps the partial-sum excess at or above
        // |e0|+|e1|+1 and drops below it exactly once it ends; the first
        // passage below that level marks the split (a bare minimum over
        // indices at the level itself can land inside the block)
        int level = x.pockets[0].len() + e1.len();
        auto lt = x.length_tuple();
        int lhat = -1, partial = 0;
        for (int j = 0; j < static_cast<int>(lt.size()); ++j) {
            partial += lt[j];
            if (j >= 1 && partial - j == level) {
                lhat = j - 1;
                break;
            }
        }
        if (lhat < 0) throw DomainError("blacklozenge split index not found");
        std::vector<CatalanTuple> pa{x.pockets[0], e1}, pb{f0};
        for (int j = 2; j <= 1 + lhat; ++j) pb.push_back(x.pockets[j]);
        for (int j = 2 + lhat; j <= x.len(); ++j) pa.push_back(x.pockets[j]);
        return {make_catalan_table(std::move(pa)), make_catalan_table(std::move(pb))};
    }
    throw DomainError("table decomposition is lozenge or blacklozenge");
}

std::vector<CatalanTable> enumerate_tables(int k, int guard) {
    if (k < 1) throw DomainError("tables need length k >= 1");
    if (k > guard) throw DomainError("table enumeration guard exceeded");
    std::vector<CatalanTable> out;
    for (const auto& lt : enumerate_tuples(k)) {
        std::vector<std::vector<CatalanTuple>> choices;
        choices.push_back(enumerate_tuples(lt.e[0] - 1));
        for (int j = 1; j <= k; ++j) choices.push_back(enumerate_tuples(lt.e[j]));
        std::vector<int> idx(choices.size(), 0);
        for (;;) {
            std::vector<CatalanTuple> pockets;
            for (std::size_t j = 0; j < choices.size(); ++j)
                pockets.push_back(choices[j][idx[j]]);
            out.push_back(make_catalan_table(std::move(pockets)));
            std::size_t j = choices.size();
            while (j > 0) {
                --j;
                if (++idx[j] < static_cast<int>(choices[j].size())) break;
                idx[j] = 0;
                if (j == 0) goto next_lt;
            }
            if (choices.size() == 0) break;
        }
    next_lt:;
    }
    return out;
}

std::vector<std::pair<int, int>> tree_edges(const CatalanTuple& t, TreeKind kind) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> open;  // (vertex, remaining half-edges)
    int n = static_cast<int>(t.e.size());
    if (kind == TreeKind::direct) {
        for (int l = 0; l < n; ++l) {
            if (l > 0) {
                edges.emplace_back(open.back().first, l);
                if (--open.back().second == 0) open.pop_back();
            }
            if (t.e[l] > 0) open.emplace_back(l, t.e[l]);
        }
    } else {
        for (int l = 0; l < n; ++l) {
            if (t.e[l] > 0) {
                open.emplace_back(l, t.e[l]);
                continue;
            }
            // connect to the last open vertex, repeating until this vertex is
            // connected to the vertex currently last-open
            while (!open.empty()) {
                int m = open.back().first;
                edges.emplace_back(m, l);
                if (--open.back().second == 0) open.pop_back();
                if (open.empty() || open.back().first == m) break;
            }
        }
    }
    return edges;
}

namespace {

struct PocketTreeData {
    std::vector<std::vector<int>> children;
    std::vector<int> parent;  // -1 for root
    std::vector<int> level;
    // edge side labels: down label and up label per (parent,child)
    std::map<std::pair<int, int>, std::pair<int, int>> labels;
};

PocketTreeData build_pocket_tree(const std::vector<int>& lt) {
    CatalanTuple t{lt};
    auto edges = tree_edges(t, TreeKind::direct);
    int n = static_cast<int>(lt.size());
    PocketTreeData d;
    d.children.assign(n, {});
    d.parent.assign(n, -1);
    d.level.assign(n, 0);
    for (auto [m, l] : edges) {
        d.children[m].push_back(l);
        d.parent[l] = m;
    }
    for (int v = 1; v < n; ++v) d.level[v] = d.level[d.parent[v]] + 1;
    // counterclockwise boundary walk labels the edge sides consecutively
    int counter = 0;
    std::function<void(int)> walk = [&](int v) {
        for (int c : d.children[v]) {
            int down = counter++;
            walk(c);
            int up = counter++;
            d.labels[{v, c}] = {down, up};
        }
    };
    walk(0);
    return d;
}

} // namespace

ExpansionMonomial table_to_monomial(const CatalanTable& t, int n_points) {
    if (n_points != 2 * t.len())
        throw DomainError("N must equal twice the table length");
    auto lt = t.length_tuple();
    PocketTreeData d = build_pocket_tree(lt);

    ExpansionMonomial m;
    for (const auto& [edge, lab] : d.labels)
        m.chords.emplace_back(std::min(lab.first, lab.second),
                              std::max(lab.first, lab.second));
    std::sort(m.chords.begin(), m.chords.end());

    int npockets = static_cast<int>(lt.size());
    for (int v = 0; v < npockets; ++v) {
        // edges at this pocket in natural order: parent edge first, then
        // children counterclockwise
        std::vector<std::pair<int, int>> sides;
        if (d.parent[v] >= 0) sides.push_back(d.labels[{d.parent[v], v}]);
        for (int c : d.children[v]) sides.push_back(d.labels[{v, c}]);
        if (sides.size() <= 1) continue;  // leaf pocket, tuple (0)
        std::vector<int> even_row, odd_row;
        for (auto [a, b] : sides) {
            if (a % 2 == 0) {
                even_row.push_back(a);
                odd_row.push_back(b);
            } else {
                odd_row.push_back(a);
                even_row.push_back(b);
            }
        }
        const CatalanTuple& tup = t.pockets[v];
        TreeKind even_kind = (d.level[v] % 2 == 0) ? TreeKind::direct : TreeKind::opposite;
        TreeKind odd_kind = (d.level[v] % 2 == 0) ? TreeKind::opposite : TreeKind::direct;
        for (auto [i, j] : tree_edges(tup, even_kind)) {
            int a = even_row[i], b = even_row[j];
            m.threads.push_back({{std::min(a, b), std::max(a, b)}, true});
        }
        for (auto [i, j] : tree_edges(tup, odd_kind)) {
            int a = odd_row[i], b = odd_row[j];
            m.threads.push_back({{std::min(a, b), std::max(a, b)}, false});
        }
    }
    int s = 0;
    for (int j = 1; j <= t.len(); ++j) s += t.pockets[j].e[0];
    m.sign = (s % 2 == 0) ? 1 : -1;
    std::sort(m.threads.begin(), m.threads.end(), [](const Thread& a, const Thread& b) {
        return std::tie(a.pair, a.even_row) < std::tie(b.pair, b.even_row);
    });
    return m;
}

std::vector<ExpansionMonomial> expand_planar(int n_points, int guard) {
    if (n_points < 2 || n_points % 2 != 0)
        throw DomainError("planar expansion needs even N >= 2");
    if (n_points > guard) throw DomainError("planar expansion guard exceeded");
    std::vector<ExpansionMonomial> out;
    for (const auto& t : enumerate_tables(n_points / 2))
        out.push_back(table_to_monomial(t, n_points));
    return out;
}

Rational naive_recursion_eval(int n_points, const std::vector<Rational>& e,
                              const std::map<std::pair<int, int>, Rational>& g2,
                              const Rational& lambda) {
    if (n_points % 2 != 0 || n_points < 2) throw DomainError("N must be even, >= 2");
    if (static_cast<int>(e.size()) != n_points) throw DomainError("E length mismatch");
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (e[i] == e[j]) throw DomainError("coincident E values");

    std::map<std::vector<int>, Rational> memo;
    std::function<Rational(const std::vector<int>&)> eval =
        [&](const std::vector<int>& idx) -> Rational {
        int n = static_cast<int>(idx.size());
        if (n == 2) {
            auto key = std::minmax(idx[0], idx[1]);
            auto it = g2.find({key.first, key.second});
            if (it == g2.end()) throw DomainError("missing 2-point value");
            return it->second;
        }
        auto mit = memo.find(idx);
        if (mit != memo.end()) return mit->second;
        Rational total(0);
        for (int l = 1; 2 * l <= n - 2; ++l) {
            std::vector<int> a(idx.begin(), idx.begin() + 2 * l);
            std::vector<int> b(idx.begin() + 2 * l, idx.end());
            std::vector<int> c(idx.begin() + 1, idx.begin() + 2 * l + 1);
            std::vector<int> d{idx[0]};
            d.insert(d.end(), idx.begin() + 2 * l + 1, idx.end());
            Rational num = eval(a) * eval(b) - eval(c) * eval(d);
            Rational den = (e[idx[0]] - e[idx[2 * l]]) * (e[idx[1]] - e[idx[n - 1]]);
            total += num / den;
        }
        total *= -lambda;
        memo.emplace(idx, total);
        return total;
    };
    std::vector<int> idx(n_points);
    for (int i = 0; i < n_points; ++i) idx[i] = i;
    return eval(idx);
}

Rational eval_expansion(const std::vector<ExpansionMonomial>& monomials, int n_points,
                        const std::vector<Rational>& e,
                        const std::map<std::pair<int, int>, Rational>& g2,
                        const Rational& lambda) {
    Rational pref(1);
    for (int i = 0; i < n_points / 2 - 1; ++i) pref *= -lambda;
    Rational total(0);
    for (const auto& m : monomials) {
        Rational v(m.sign);
        for (auto [a, b] : m.chords) {
            auto it = g2.find({a, b});
            if (it == g2.end()) throw DomainError("missing 2-point value");
            v *= it->second;
        }
        for (const auto& th : m.threads) v /= (e[th.pair.first] - e[th.pair.second]);
        total += v;
    }
    return pref * total;
}

std::string render_chords(const CatalanTable& t, int n_points) {
    ExpansionMonomial m = table_to_monomial(t, n_points);
    std::ostringstream os;
    os << "graph chords {\n";
    os << "  layout=circo;\n";
    os << "  // sign " << (m.sign > 0 ? "+1" : "-1") << "\n";
    for (int i = 0; i < n_points; ++i)
        os << "  p" << i << " [shape=circle];\n";
    for (int i = 0; i < n_points; ++i)
        os << "  p" << i << " -- p" << (i + 1) % n_points << " [style=invis];\n";
    for (auto [a, b] : m.chords)
        os << "  p" << a << " -- p" << b << " [color=green];\n";
    for (const auto& th : m.threads)
        os << "  p" << th.pair.first << " -- p" << th.pair.second << " [color="
           << (th.even_row ? "orange" : "blue") << ", parity="
           << (th.even_row ? "even" : "odd") << "];\n";
    os << "}\n";
    return os.str();
}

bool monomial_geometry_ok(const ExpansionMonomial& m) {
    auto crosses = [](std::pair<int, int> a, std::pair<int, int> b) {
        // strict interleaving on the circle
        return (a.first < b.first && b.first < a.second && a.second < b.second) ||
               (b.first < a.first && a.first < b.second && b.second < a.second);
    };
    for (std::size_t i = 0; i < m.chords.size(); ++i)
        for (std::size_t j = i + 1; j < m.chords.size(); ++j)
            if (crosses(m.chords[i], m.chords[j])) return false;
    for (const auto& th : m.threads)
        for (const auto& ch : m.chords)
            if (crosses(th.pair, ch)) return false;
    return true;
}

} // namespace mft
