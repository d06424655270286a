#pragma once

#include <optional>

#include "refuterlab/cnf.hpp"
#include "refuterlab/resolution.hpp"
#include "refuterlab/rwphp.hpp"

namespace rfl {

// Embeds an rwPHP instance over pointer-following inners into a purported
// size-s_F refutation of an arbitrary unsatisfiable CNF F. Layers double the
// brute-force refutation tree until the row budget M is hit, then compress
// each doubled row back to M clauses through f, with weakening chains driven
// by the inner instances linking each doubled clause to its purported
// preimage. The only derivations that can break are those linking chains: an
// invalid node names a verified rwPHP solution.
struct RwPhpToSizeRefuter {
  RefutationInstance instance;  // lazy node oracle of length s_F
  std::function<std::optional<RwPhpSolution<IterInstance, uint64_t>>(int64_t)> map_solution;
  int node_budget = 0;  // O(n): a constant number of reads per layer crossed
  uint64_t core_size = 0;
};

// Requires N = 2M, every inner instance of length inner_len, and
// s_F >= 4*(n*inner_len*M + |F|) as well as s_F at least the core size.
RwPhpToSizeRefuter rwphp_to_size_refuter(const RwPhpInstance<IterInstance, uint64_t>& rw,
                                         uint64_t inner_len, const Cnf& f, uint64_t s_F);

}  // namespace rfl
