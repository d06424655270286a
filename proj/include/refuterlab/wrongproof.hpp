#pragma once

#include <variant>

#include "refuterlab/iter.hpp"
#include "refuterlab/resolution.hpp"

namespace rfl {

// A purported refutation of a CNF together with a purported satisfying
// assignment; a solution is an invalid derivation or a falsified axiom.
struct WrongProofInstance {
  RefutationInstance proof;
  std::vector<bool> alpha;  // alpha[v-1] for variable v
};

struct WrongProofSolution {
  bool axiom = false;
  int64_t index = 0;  // node index, or negative axiom index when axiom=true
};

bool verify_wrongproof(const WrongProofInstance& inst, const WrongProofSolution& sol);

// Reversed pointer instance over shifted indices {-k..L-1} |-> [k+L]:
// inactive clauses self-loop, falsified axioms point forward, active
// non-axioms follow an active predecessor. Each entry reads at most 2 blocks.
struct WrongProofToIter {
  IterInstance iter;
  std::function<WrongProofSolution(uint64_t)> map_solution;
  int entry_budget = 2;
};
WrongProofToIter wrongproof_to_iter(const WrongProofInstance& inst);

// Hardness direction: encode a reversed pointer instance as a purported
// refutation of a satisfiable CNF. Requires alpha to satisfy F and the first
// two axioms to admit a resolution step.
struct IterToWrongProof {
  WrongProofInstance instance;
  std::function<uint64_t(const WrongProofSolution&)> map_solution;
  int node_budget = 2;
};
IterToWrongProof iter_to_wrongproof(const IterInstance& s, const Cnf& f,
                                    const std::vector<bool>& alpha);

}  // namespace rfl
