#pragma once

#include <map>
#include <memory>
#include <optional>

#include "refuterlab/cnf.hpp"
#include "refuterlab/dtree.hpp"
#include "refuterlab/resolution.hpp"

namespace rfl {

// Memory of the query/forget/output game: strategy registers plus a partial
// assignment of the formula's variables.
struct ProverMemory {
  std::vector<uint64_t> regs;
  std::map<int, bool> assignment;

  Clause falsified_clause() const;  // C(rho): the one clause rho falsifies
};

struct ProverAction {
  enum class Kind : uint8_t { Query, Forget, Output, Stuck };
  Kind kind = Kind::Stuck;
  int var = 0;
  int64_t axiom = 0;  // 0-based index into the formula's clauses
};

// Deterministic strategy: the next action is a function of the memory, and
// register updates accompany answers and forgets.
struct ProverStrategy {
  virtual ~ProverStrategy() = default;
  virtual ProverMemory initial() const = 0;
  virtual ProverAction next(const ProverMemory& m) const = 0;
  virtual ProverMemory after_query(const ProverMemory& m, int var, bool value) const = 0;
  virtual ProverMemory after_forget(const ProverMemory& m, int var) const = 0;
  virtual int var_budget() const = 0;
};

// Compile a strategy into a refutation by branching on both answers of every
// query. Fails if some play exceeds step_cap (non-terminating strategy) or
// the strategy gets stuck.
struct CompiledProof {
  std::vector<ResolutionNode> nodes;
  int max_vars_held = 0;  // peak assignment size over the simulation
  RefutationInstance instance(const Cnf& f) const;
};
CompiledProof prover_to_resolution(const ProverStrategy& strategy, const Cnf& f,
                                   uint64_t step_cap = 1u << 20);

// A purported shallow reduction from Search(F) to pointer-following over [M]:
// per-index successor trees and per-solution labelling trees (leaves are
// 0-based axiom indices).
struct PlsFormulation {
  uint64_t M = 0;
  std::vector<DTree> succ;
  std::vector<DTree> label;

  int depth() const;
};

// The walking strategy: query the successor tree of the current node, move
// upward, forget what the previous node no longer needs, and label a solution
// once the pointer stalls or drops. Memory: at most 3d variables and the
// (previous, current, position) registers.
std::shared_ptr<ProverStrategy> pls_to_prover(const PlsFormulation& formulation, const Cnf& f);

// Fixed bit layout for game states: registers big-endian first, then the
// assignment as (position, value) slots sorted by position. Encodings
// strictly increase along every execution; flipping all bits makes proof
// indices decrease instead.
struct MemoryCodec {
  uint64_t M = 0;
  int nvars = 0;
  int var_slots = 0;   // 3d
  int reg_bits[5] = {0, 0, 0, 0, 0};  // v, phase, r3, r4, pos
  int slot_bits = 0;
  int total_bits = 0;

  MemoryCodec() = default;
  MemoryCodec(const PlsFormulation& f, int nvars);
  uint64_t encode(const ProverMemory& m) const;
  std::optional<ProverMemory> decode(uint64_t code) const;
  // format plus consistency of registers against the formulation's trees
  bool is_valid_encoding(uint64_t code, const PlsFormulation& f) const;
  uint64_t flip(uint64_t code) const { return ((~code) << (64 - total_bits)) >> (64 - total_bits); }
};

// Exhaustive adversarial check: the strategy terminates with a correct
// output against every answer pattern.
struct GameCheck {
  bool wins = false;
  int max_vars_held = 0;
  uint64_t plays = 0;
};
GameCheck exhaustive_game_check(const ProverStrategy& strategy, const Cnf& f,
                                uint64_t step_cap = 1u << 20);

// The false-clause-search formula of a solution-verified problem: one clause
// per accepting path per verifier tree.
Cnf search_cnf(const std::vector<DTree>& verifier_trees, int nvars);

}  // namespace rfl
