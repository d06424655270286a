#pragma once

#include <vector>

#include "refuterlab/clause.hpp"
#include "refuterlab/graph.hpp"

namespace rfl {

// Count (and set) of indices l admitting an l-critical assignment that
// falsifies the clause: the subadditive progress measure the walks follow.
struct CriResult {
  int value = 0;
  std::vector<int> critical_set;
};

// Monotonization for PHP clauses: negated variables are replaced by the other
// holes of the same pigeon row. `holes` lists the hole ids still present.
Clause mono(const Clause& c, int n);
Clause mono_sub(const Clause& c, int n_full, const std::vector<int>& holes);

// cri over EPHP_{(n+1)->n} (extension variables included); per-pigeon
// bipartite matching test.
CriResult cri_ephp(int n, const Clause& c);

// Sparse fast path: skips untouched full-degree pigeons and runs the matching
// on the involved subgraph only. Must agree with cri_ephp everywhere.
CriResult cri_ephp_sparse(int n, const Clause& c);

// cri of mono(C) over PHP_{m->n} with m = n+1.
CriResult cri_mono_php(int m, int n, const Clause& c);

// Restricted variant: pigeons/holes list the remaining ids of a shrunken
// instance, clauses still over the original variable numbering (n_full).
CriResult cri_mono_php_sub(const std::vector<int>& pigeons, const std::vector<int>& holes,
                           int n_full, const Clause& c);

// cri over Tseitin(G, tau): per vertex, per falsifying sign pattern, fix the
// literals and test the remaining parity constraints over GF(2).
CriResult cri_tseitin(const Graph& g, const std::vector<bool>& tau, const Clause& c);

}  // namespace rfl
