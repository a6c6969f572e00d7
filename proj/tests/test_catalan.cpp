#include <doctest.h>

#include <random>

#include "mft/catalan.hpp"
#include "mft/special_functions.hpp"

using namespace mft;

namespace {

CatalanTuple ct(std::vector<int> e) { return make_catalan_tuple(std::move(e)); }

CatalanTable tab(std::vector<std::vector<int>> pockets) {
    std::vector<CatalanTuple> p;
    for (auto& e : pockets) p.push_back(ct(std::move(e)));
    return make_catalan_table(std::move(p));
}

Integer table_count_formula(int k) {
    // d_{k-1} = C(3(k-1)+1, k-1) / k
    return binomial(3 * (k - 1) + 1, k - 1) / k;
}

Integer subset_count_formula(int k) {
    // h_{k-1} = C(3(k-1), k-1) / (2(k-1)+1)
    return binomial(3 * (k - 1), k - 1) / (2 * (k - 1) + 1);
}

} // namespace

TEST_CASE("tuple validation") {
    CHECK(is_catalan_tuple({0}));
    CHECK(is_catalan_tuple({1, 0}));
    CHECK(is_catalan_tuple({2, 0, 0}));
    CHECK(!is_catalan_tuple({0, 1}));
    CHECK(!is_catalan_tuple({1, 1}));
    CHECK(!is_catalan_tuple({}));
    CHECK_THROWS_AS(make_catalan_tuple({1, 2, 0}), DomainError);
}

TEST_CASE("tuple enumeration counts Catalan numbers") {
    for (int k = 0; k <= 8; ++k) {
        auto tuples = enumerate_tuples(k);
        CHECK(Integer(static_cast<long>(tuples.size())) == catalan_number(k));
        for (const auto& t : tuples) CHECK(is_catalan_tuple(t.e));
    }
}

TEST_CASE("printed compositions") {
    CHECK(compose(ComposeKind::circ, ct({1, 0}), ct({0})) == ct({2, 0, 0}));
    CHECK(compose(ComposeKind::circ, ct({0}), ct({0})) == ct({1, 0}));
    CHECK(compose(ComposeKind::circ, ct({0}), ct({1, 0})) == ct({1, 1, 0}));
    CHECK(compose(ComposeKind::circ, ct({2, 1, 0, 0}), ct({2, 0, 0})) ==
          ct({3, 1, 0, 0, 2, 0, 0}));
    CHECK(compose(ComposeKind::bullet, ct({1, 0}), ct({0})) == ct({2, 0, 0}));
    CHECK(compose(ComposeKind::bullet, ct({0}), ct({1, 0})) == ct({1, 1, 0}));
    CHECK(compose(ComposeKind::bullet, ct({2, 0, 2, 0, 0}), ct({1, 0})) ==
          ct({3, 1, 0, 0, 2, 0, 0}));
}

TEST_CASE("printed decompositions") {
    auto [a, b] = decompose_tuple(ComposeKind::bullet, ct({2, 1, 0, 0}));
    CHECK(a == ct({1, 0}));
    CHECK(b == ct({1, 0}));
    auto [c, d] = decompose_tuple(ComposeKind::circ, ct({1, 0}));
    CHECK(c == ct({0}));
    CHECK(d == ct({0}));
    CHECK_THROWS_AS(decompose_tuple(ComposeKind::circ, ct({0})), DomainError);
}

TEST_CASE("table composition examples") {
    CatalanTable lhs = compose(ComposeKind::lozenge, tab({{1, 0}, {0}, {0}}),
                               tab({{0}, {1, 0}, {0}}));
    CHECK(lhs == tab({{2, 0, 0}, {0}, {0}, {1, 0}, {0}}));
    auto [la, lb] = decompose_table(ComposeKind::lozenge, lhs);
    CHECK(la == tab({{1, 0}, {0}, {0}}));
    CHECK(lb == tab({{0}, {1, 0}, {0}}));

    CatalanTable rhs = compose(ComposeKind::blacklozenge, tab({{0}, {1, 0}, {0}}),
                               tab({{1, 0}, {0}, {0}}));
    CHECK(rhs == tab({{0}, {2, 1, 0, 0}, {0}, {0}, {0}}));
    auto [ba, bb] = decompose_table(ComposeKind::blacklozenge, rhs);
    CHECK(ba == tab({{0}, {1, 0}, {0}}));
    CHECK(bb == tab({{1, 0}, {0}, {0}}));

    CHECK_THROWS_AS(decompose_table(ComposeKind::lozenge, tab({{0}, {1, 0}, {0}})),
                    DomainError);
    CHECK_THROWS_AS(decompose_table(ComposeKind::blacklozenge, tab({{1, 0}, {0}, {0}})),
                    DomainError);
}

TEST_CASE("compose/decompose roundtrip on random pairs") {
    std::mt19937 rng(4242);
    auto pick = [&](int kmax) {
        std::uniform_int_distribution<int> kd(0, kmax);
        auto tuples = enumerate_tuples(kd(rng));
        std::uniform_int_distribution<std::size_t> td(0, tuples.size() - 1);
        return tuples[td(rng)];
    };
    for (int i = 0; i < 500; ++i) {
        CatalanTuple a = pick(4), b = pick(4);
        for (auto kind : {ComposeKind::circ, ComposeKind::bullet}) {
            CatalanTuple c = compose(kind, a, b);
            auto [x, y] = decompose_tuple(kind, c);
            CHECK(x == a);
            CHECK(y == b);
        }
    }
    // table level
    auto tables3 = enumerate_tables(3);
    auto tables2 = enumerate_tables(2);
    for (const auto& a : tables2)
        for (const auto& b : tables3)
            for (auto kind : {ComposeKind::lozenge, ComposeKind::blacklozenge}) {
                CatalanTable c = compose(kind, a, b);
                auto [x, y] = decompose_table(kind, c);
                CHECK(x == a);
                CHECK(y == b);
            }
}

TEST_CASE("table counting matches the closed form") {
    // d_k for k = 0..6: 1, 2, 7, 30, 143, 728, 3876
    std::vector<long> expect{1, 2, 7, 30, 143, 728, 3876};
    for (int k = 1; k <= 7; ++k) {
        auto tables = enumerate_tables(k);
        CHECK(static_cast<long>(tables.size()) == expect[k - 1]);
        CHECK(Integer(static_cast<long>(tables.size())) == table_count_formula(k));
        long h = 0;
        for (const auto& t : tables)
            if (t.pockets[0].len() == 0) ++h;
        CHECK(Integer(h) == subset_count_formula(k));
    }
    // k = 3 has 7 tables, 3 with trivial first pocket
    auto t3 = enumerate_tables(3);
    long h = 0;
    for (const auto& t : t3)
        if (t.pockets[1].len() == 0) ++h;
    CHECK(h == 3);
}

TEST_CASE("k = 1 and k = 2 table lists") {
    auto t1 = enumerate_tables(1);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0] == tab({{0}, {0}}));
    CHECK(enumerate_tables(2).size() == 2);
}

TEST_CASE("convolution identity for the table count") {
    for (int k = 0; k <= 6; ++k) {
        Integer sum = 0;
        for (const auto& e : enumerate_tuples(k + 1)) {
            Integer prod = catalan_number(e.e[0] - 1);
            for (std::size_t j = 1; j < e.e.size(); ++j) prod *= catalan_number(e.e[j]);
            sum += prod;
        }
        CHECK(sum == table_count_formula(k + 1));
    }
}

TEST_CASE("generating function relations hold coefficient-wise") {
    // D = D^2 + H and H = H D + x for the counting series
    std::vector<Integer> d{0}, h{0};  // index = power of x
    for (int k = 1; k <= 8; ++k) {
        d.push_back(table_count_formula(k));
        h.push_back(subset_count_formula(k));
    }
    for (int n = 1; n <= 8; ++n) {
        Integer conv = 0;
        for (int i = 0; i <= n; ++i) conv += d[i] * d[n - i];
        CHECK(d[n] == conv + h[n]);
        Integer conv2 = 0;
        for (int i = 0; i <= n; ++i) conv2 += h[i] * d[n - i];
        CHECK(h[n] == conv2 + (n == 1 ? 1 : 0));
    }
}

TEST_CASE("trees from the drawing algorithms") {
    using Edges = std::vector<std::pair<int, int>>;
    CHECK(tree_edges(ct({3, 0, 0, 0}), TreeKind::direct) ==
          Edges{{0, 1}, {0, 2}, {0, 3}});
    CHECK(tree_edges(ct({1, 1, 1, 0}), TreeKind::opposite) ==
          Edges{{2, 3}, {1, 3}, {0, 3}});
    CHECK(tree_edges(ct({0}), TreeKind::direct).empty());
    CHECK(tree_edges(ct({0}), TreeKind::opposite).empty());
    CHECK(tree_edges(ct({2, 0, 1, 0}), TreeKind::direct) ==
          Edges{{0, 1}, {0, 2}, {2, 3}});
    CHECK(tree_edges(ct({2, 0, 1, 0}), TreeKind::opposite) ==
          Edges{{0, 1}, {2, 3}, {0, 3}});
    for (int k = 0; k <= 6; ++k)
        for (const auto& t : enumerate_tuples(k)) {
            CHECK(tree_edges(t, TreeKind::direct).size() == static_cast<std::size_t>(k));
            CHECK(tree_edges(t, TreeKind::opposite).size() == static_cast<std::size_t>(k));
        }
}

TEST_CASE("four-point monomials match the worked diagrams") {
    ExpansionMonomial m1 = table_to_monomial(tab({{1, 0}, {0}, {0}}), 4);
    CHECK(m1.sign == 1);
    CHECK(m1.chords == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
    REQUIRE(m1.threads.size() == 2);
    CHECK(m1.threads[0].pair == std::pair<int, int>{0, 2});
    CHECK(m1.threads[0].even_row);
    CHECK(m1.threads[1].pair == std::pair<int, int>{1, 3});
    CHECK(!m1.threads[1].even_row);

    ExpansionMonomial m2 = table_to_monomial(tab({{0}, {1, 0}, {0}}), 4);
    CHECK(m2.sign == -1);
    CHECK(m2.chords == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});

    CHECK_THROWS_AS(table_to_monomial(tab({{0}, {0}}), 4), DomainError);
}

TEST_CASE("the worked twelve-point table") {
    CatalanTable t = tab({{2, 0, 0}, {1, 1, 0}, {0}, {0}, {0}, {1, 0}, {0}});
    ExpansionMonomial m = table_to_monomial(t, 12);
    CHECK(m.sign == 1);
    CHECK(m.chords == std::vector<std::pair<int, int>>{
                          {0, 5}, {1, 2}, {3, 4}, {6, 7}, {8, 11}, {9, 10}});
    std::vector<std::pair<int, int>> pairs;
    for (const auto& th : m.threads) pairs.push_back(th.pair);
    std::sort(pairs.begin(), pairs.end());
    CHECK(pairs == std::vector<std::pair<int, int>>{{0, 4}, {0, 6}, {0, 8}, {1, 3}, {1, 5},
                                                    {2, 4}, {5, 7}, {5, 11}, {8, 10}, {9, 11}});
}

TEST_CASE("expansion term counts") {
    CHECK(expand_planar(2).size() == 1);
    CHECK(expand_planar(2)[0].threads.empty());
    CHECK(expand_planar(4).size() == 2);
    CHECK(expand_planar(6).size() == 7);
    CHECK_THROWS_AS(expand_planar(5), DomainError);
    CHECK_THROWS_AS(expand_planar(18), DomainError);
}

TEST_CASE("monomials stay planar") {
    for (int n : {4, 6, 8}) {
        for (const auto& m : expand_planar(n)) {
            CHECK(monomial_geometry_ok(m));
            CHECK(m.chords.size() == static_cast<std::size_t>(n / 2));
            CHECK(m.threads.size() == static_cast<std::size_t>(n - 2));
        }
    }
}

namespace {

struct RandomData {
    std::vector<Rational> e;
    std::map<std::pair<int, int>, Rational> g2;
};

RandomData make_rdata(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 500), den(1, 11);
    RandomData d;
    while (static_cast<int>(d.e.size()) < n) {
        Rational cand = rat(num(rng), den(rng));
        bool dup = false;
        for (const auto& v : d.e) dup = dup || (v == cand);
        if (!dup) d.e.push_back(cand);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d.g2[{i, j}] = rat(num(rng) - 250, den(rng));
    return d;
}

} // namespace

TEST_CASE("expansion equals the recursion exactly") {
    for (int n : {2, 4, 6, 8, 10}) {
        RandomData d = make_rdata(n, 1000 + n);
        Rational lambda = rat(4, 9);
        Rational lhs = naive_recursion_eval(n, d.e, d.g2, lambda);
        Rational rhs = eval_expansion(expand_planar(n), n, d.e, d.g2, lambda);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluated sum is cyclic and reversal invariant") {
    for (int n : {4, 6, 8, 10}) {
        RandomData d = make_rdata(n, 77 + n);
        Rational lambda = rat(-5, 3);
        Rational base = naive_recursion_eval(n, d.e, d.g2, lambda);

        // cyclic rotation of the labels
        std::vector<Rational> er(n);
        std::map<std::pair<int, int>, Rational> g2r;
        auto rot = [&](int i) { return (i + 1) % n; };
        for (int i = 0; i < n; ++i) er[rot(i)] = d.e[i];
        for (const auto& [key, val] : d.g2) {
            int a = rot(key.first), b = rot(key.second);
            if (a > b) std::swap(a, b);
            g2r[{a, b}] = val;
        }
        CHECK(naive_recursion_eval(n, er, g2r, lambda) == base);

        // reversal
        std::vector<Rational> ev(n);
        std::map<std::pair<int, int>, Rational> g2v;
        auto rev = [&](int i) { return n - 1 - i; };
        for (int i = 0; i < n; ++i) ev[rev(i)] = d.e[i];
        for (const auto& [key, val] : d.g2) {
            int a = rev(key.first), b = rev(key.second);
            if (a > b) std::swap(a, b);
            g2v[{a, b}] = val;
        }
        CHECK(naive_recursion_eval(n, ev, g2v, lambda) == base);
    }
}

TEST_CASE("partial fraction identity") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> num(1, 300), den(1, 9);
    for (int rep = 0; rep < 40; ++rep) {
        Rational a = rat(num(rng), den(rng)), b = rat(num(rng) + 301, den(rng)),
                 c = rat(num(rng) + 602, den(rng));
        Rational lhs = rat(1) / ((a - b) * (b - c)) + rat(1) / ((c - a) * (a - b)) +
                       rat(1) / ((b - c) * (c - a));
        CHECK(is_zero(lhs));
    }
}

TEST_CASE("recursion input validation") {
    RandomData d = make_rdata(4, 9);
    d.e[2] = d.e[0];
    CHECK_THROWS_AS(naive_recursion_eval(4, d.e, d.g2, rat(1)), DomainError);
}

TEST_CASE("chord rendering is deterministic and complete") {
    CatalanTable t = tab({{1, 0}, {0}, {0}});
    std::string dot = render_chords(t, 4);
    CHECK(dot == render_chords(t, 4));
    CHECK(dot.find("p0 -- p1 [color=green]") != std::string::npos);
    CHECK(dot.find("p2 -- p3 [color=green]") != std::string::npos);
    CHECK(dot.find("parity=even") != std::string::npos);
    CHECK(dot.find("parity=odd") != std::string::npos);

    std::string two = render_chords(tab({{0}, {0}}), 2);
    CHECK(two.find("p0 -- p1 [color=green]") != std::string::npos);
    CHECK(two.find("orange") == std::string::npos);
    CHECK(two.find("blue") == std::string::npos);
}
