#pragma once

#include <cstdint>
#include <set>

#include "refuterlab/cnf.hpp"
#include "refuterlab/graph.hpp"

namespace rfl {

// Variable numbering contracts, fixed so oracles and codecs agree bit-exactly.
//
// PHP_{m->n}: x_{i,j} |-> i*n + j + 1 for pigeon i in [m], hole j in [n].
// EPHP: x-block as in PHP (m = n+1), then y_{i,j} |-> (n+1)*n + i*(n+1) + j + 1
//       for j in [0..n].
// XOR lift: base variable z_i |-> x_i = 2i-1, y_i = 2i.
inline int php_var(int i, int j, int n) { return i * n + j + 1; }
inline int ephp_x(int i, int j, int n) { return php_var(i, j, n); }
inline int ephp_y(int i, int j, int n) { return (n + 1) * n + i * (n + 1) + j + 1; }
inline int xor_x(int z) { return 2 * z - 1; }
inline int xor_y(int z) { return 2 * z; }

// Pigeon clauses plus one clause per hole and pigeon pair.
Cnf gen_php(int m, int n);

// PHP_{(n+1)->n} with each pigeon clause replaced by its 3-CNF extension:
// !y_{i,0}; (y_{i,j} v x_{i,j} v !y_{i,j+1}) for j in [n]; y_{i,n}.
// y_{i,j} reads "pigeon i sits in a hole with index < j".
Cnf gen_ephp(int n);

// Parity constraints x(e1) xor ... xor x(ed) = tau(v) per vertex, expanded
// into 2^(d-1) clauses each. Requires max degree <= 6.
Cnf gen_tseitin(const Graph& g, const std::vector<bool>& tau);

bool odd_weighted(const std::vector<bool>& tau);

// Replace each z_i by x_i xor y_i; each width-d clause becomes 2^d clauses of
// width 2d.
Cnf xor_lift(const Cnf& f);

// m clauses drawn i.i.d. uniformly from the ordinary width-k clauses over n
// variables; deterministic in the seed.
Cnf gen_random_kcnf(int k, int n, int m, uint64_t seed);

// The k-uniform multi-hypergraph of a k-CNF: one edge (variable set) per
// clause.
struct HypergraphView {
  int nvertices = 0;                    // variables
  std::vector<std::vector<int>> edges;  // sorted variable ids per clause

  static HypergraphView of_cnf(const Cnf& f);
};

// Vertices belonging to exactly one edge of the subset.
std::vector<int> boundary(const HypergraphView& h, const std::vector<int>& edge_subset);

// Whether the family has a system of distinct representatives avoiding the
// forbidden set; via maximum bipartite matching.
bool has_sdr_disjoint(const std::vector<std::vector<int>>& family, const std::set<int>& forbidden);

// Whether every family of m <= a*n edges has boundary size >= m/2.
// Exhaustive over edge subsets; <= 20 edges.
bool property_P(const HypergraphView& h, double a);

}  // namespace rfl
