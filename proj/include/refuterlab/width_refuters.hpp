#pragma once

#include "refuterlab/cri.hpp"
#include "refuterlab/iter.hpp"
#include "refuterlab/resolution.hpp"

namespace rfl {

// What a width refuter may return: a broken derivation, a clause whose
// monotone width crosses the stated bound, or (Tseitin) a sparse balanced cut.
struct WidthRefuterAnswer {
  enum class Kind : uint8_t { InvalidNode, FatClause, CutWitness };
  Kind kind = Kind::InvalidNode;
  int64_t node = 0;
  std::vector<int> cut;  // vertex set, CutWitness only
};

// A walk-style reduction to reversed pointer-following: the instance plus the
// map taking pointer solutions back to refuter answers.
struct WalkReduction {
  IterInstance iter;
  std::function<WidthRefuterAnswer(uint64_t)> map_solution;
  int entry_budget = 3;
};

// 1/3-2/3 walk on cri over EPHP_{(n+1)->n}; proofs carry the syntactic width
// cap ceil(n/3)-1. Needs n >= 4.
WalkReduction ephp_width_refuter_to_iter(const RefutationInstance& inst, int n);

// Walk on cri(mono(.)) over PHP_{(n+1)->n}; answers are invalid nodes or
// clauses with monotone width >= 2n^2/9. Needs n >= 4.
WalkReduction mono_width_refuter_to_iter(const RefutationInstance& inst, int n);

// Walk on Tseitin cri; answers are invalid nodes or balanced cuts witnessing
// expansion below e.
WalkReduction tseitin_width_refuter_to_iter(const Graph& g, const std::vector<bool>& tau, int e,
                                            const RefutationInstance& inst);

// Non-uniform membership for any true width bound: pointers follow the first
// predecessor whose clause is not width-derivable from F. Entry depth 2.
// Verifies at construction that w0 really is a lower bound (brute force).
WalkReduction universal_width_refuter_to_iter(const Cnf& f, int w0,
                                              const RefutationInstance& inst);

// Hardness: encode a reversed pointer instance as a purported width-capped
// refutation of F whose invalid nodes are exactly the pointer solutions.
// Requires w(F |- bot) > width(F), checked by saturation.
struct IterToWidthRefuter {
  RefutationInstance instance;
  std::function<uint64_t(int64_t)> map_solution;  // invalid node -> pointer solution
  int node_budget = 2;
};
// verify_bound re-runs the saturation check; pass false when constructing
// many instances over one already-checked formula.
IterToWidthRefuter iter_to_width_refuter(const IterInstance& s, const Cnf& f,
                                         bool verify_bound = true);

// Answer verifiers for the three families.
bool verify_ephp_width_answer(const RefutationInstance& inst, int n, const WidthRefuterAnswer& a);
bool verify_mono_width_answer(const RefutationInstance& inst, int n, const WidthRefuterAnswer& a);
bool verify_tseitin_width_answer(const Graph& g, const std::vector<bool>& tau, int e,
                                 const RefutationInstance& inst, const WidthRefuterAnswer& a);

}  // namespace rfl
