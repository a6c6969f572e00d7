#pragma once

#include <map>
#include <string>
#include <vector>

#include "mft/rational.hpp"

namespace mft {

// Integer tuple (e0,...,ek) with sum k and strict partial-sum excess.
struct CatalanTuple {
    std::vector<int> e;

    int len() const { return static_cast<int>(e.size()) - 1; }
    bool operator==(const CatalanTuple& o) const { return e == o.e; }
    bool operator<(const CatalanTuple& o) const { return e < o.e; }
};

bool is_catalan_tuple(const std::vector<int>& e);
CatalanTuple make_catalan_tuple(std::vector<int> e);  // validates
std::vector<CatalanTuple> enumerate_tuples(int k);    // lexicographic

// Tuple of Catalan tuples whose length tuple (1+|e0|,|e1|,..,|ek|) is
// itself Catalan.
struct CatalanTable {
    std::vector<CatalanTuple> pockets;

    int len() const { return static_cast<int>(pockets.size()) - 1; }
    std::vector<int> length_tuple() const;
    bool operator==(const CatalanTable& o) const { return pockets == o.pockets; }
};

CatalanTable make_catalan_table(std::vector<CatalanTuple> pockets);  // validates

enum class ComposeKind { circ, bullet, lozenge, blacklozenge };

CatalanTuple compose(ComposeKind kind, const CatalanTuple& a, const CatalanTuple& b);
CatalanTable compose(ComposeKind kind, const CatalanTable& a, const CatalanTable& b);
std::pair<CatalanTuple, CatalanTuple> decompose_tuple(ComposeKind kind,
                                                      const CatalanTuple& x);
std::pair<CatalanTable, CatalanTable> decompose_table(ComposeKind kind,
                                                      const CatalanTable& x);

// All Catalan tables of length k, ordered by length tuple then pockets.
std::vector<CatalanTable> enumerate_tables(int k, int guard = 8);

enum class TreeKind { direct, opposite };

// Edges (i,j), i earlier vertex, of the planted plane tree drawn from a
// tuple; both kinds have |tuple| edges.
std::vector<std::pair<int, int>> tree_edges(const CatalanTuple& t, TreeKind kind);

struct Thread {
    std::pair<int, int> pair;  // sorted, t < u
    bool even_row = true;
};

struct ExpansionMonomial {
    int sign = 1;
    std::vector<std::pair<int, int>> chords;  // (r,s), r < s
    std::vector<Thread> threads;
};

ExpansionMonomial table_to_monomial(const CatalanTable& t, int n_points);

std::vector<ExpansionMonomial> expand_planar(int n_points, int guard = 16);

// Exact evaluation of the recursion with 2-point inputs; e must be
// pairwise distinct, g2 symmetric (keyed by sorted index pairs).
Rational naive_recursion_eval(int n_points, const std::vector<Rational>& e,
                              const std::map<std::pair<int, int>, Rational>& g2,
                              const Rational& lambda);

Rational eval_expansion(const std::vector<ExpansionMonomial>& monomials, int n_points,
                        const std::vector<Rational>& e,
                        const std::map<std::pair<int, int>, Rational>& g2,
                        const Rational& lambda);

std::string render_chords(const CatalanTable& t, int n_points);

// non-crossing / pocket-confinement check used by the invariant tests
bool monomial_geometry_ok(const ExpansionMonomial& m);

} // namespace mft
