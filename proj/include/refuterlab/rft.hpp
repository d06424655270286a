#pragma once

#include <optional>

#include "refuterlab/iter.hpp"
#include "refuterlab/prover.hpp"
#include "refuterlab/resolution.hpp"

namespace rfl {

// A purported solution refuting a shallow reduction from Search(F) to
// pointer-following: a partial assignment (the listed positions) and a
// target-problem solution that works for every extension.
struct RftSolution {
  std::vector<std::pair<int, bool>> rho;
  uint64_t o_star = 0;
};

// Check both refutation conditions with a trapping oracle: reading a position
// outside rho fails the candidate.
bool verify_rft(const PlsFormulation& reduction, const Cnf& f, const RftSolution& sol);

// Depth-0 embedding: a bare pointer instance becomes a constant "reduction";
// any refuting pair carries a valid solution of the instance.
struct EmbeddedRft {
  PlsFormulation reduction;
  std::function<uint64_t(const RftSolution&)> map_solution;
};
EmbeddedRft embed_iter_in_rft(const IterInstance& q, int64_t default_axiom = 0);

// A uniform many-one reduction between search problems given by per-bit
// trees: bit[i] computes position i of the image, sol[o] maps solutions back.
struct FrontReduction {
  int in_vars = 0, out_vars = 0;
  std::vector<DTree> bit;
  std::vector<DTree> sol;
};

// Compose a front reduction into a purported reduction; refutations map back
// by replaying the three verification processes and filling the untouched
// positions arbitrarily.
struct GapComposedRft {
  PlsFormulation reduction;
  std::function<std::optional<RftSolution>(const RftSolution&)> map_solution;
};
GapComposedRft rft_gap_compose(const FrontReduction& front, const PlsFormulation& inst,
                               const Cnf& base_f);

// The purported-reduction refuter as a width refuter: node indices are
// bit-flipped memory encodings of the walking game; only output steps can
// break, and a broken one recovers a refuting pair.
struct TfnpRefuterToWidthRefuter {
  RefutationInstance instance;
  MemoryCodec codec;
  std::function<std::optional<RftSolution>(int64_t)> map_solution;
  int node_budget = 0;
};
TfnpRefuterToWidthRefuter tfnp_refuter_to_width_refuter(const PlsFormulation& reduction,
                                                        const Cnf& f);

}  // namespace rfl
