#pragma once

#include <optional>
#include <string>

#include "refuterlab/cnf.hpp"
#include "refuterlab/oracle.hpp"

namespace rfl {

enum class NodeTag : uint8_t { Resolution, Weakening };

// One line of a purported refutation. Axioms live at negative indices
// -m..-1 (axiom j of the CNF is index j - m); predecessors must be strictly
// below the node's own index.
struct ResolutionNode {
  Clause clause;
  NodeTag tag = NodeTag::Weakening;
  int64_t pred1 = 0;
  int64_t pred2 = 0;  // resolution only
  int pivot = 0;      // resolution only

  bool operator==(const ResolutionNode& o) const {
    return clause == o.clause && tag == o.tag && pred1 == o.pred1 &&
           (tag == NodeTag::Weakening || (pred2 == o.pred2 && pivot == o.pivot));
  }

  static ResolutionNode weakening(Clause c, int64_t from) {
    ResolutionNode n;
    n.clause = std::move(c);
    n.tag = NodeTag::Weakening;
    n.pred1 = from;
    return n;
  }
  static ResolutionNode resolution(Clause c, int64_t p1, int64_t p2, int pivot) {
    ResolutionNode n;
    n.clause = std::move(c);
    n.tag = NodeTag::Resolution;
    n.pred1 = p1;
    n.pred2 = p2;
    n.pivot = pivot;
    return n;
  }
};

// A purported refutation: validity (every node checks out and the last clause
// is empty) is what refuters look for, not a well-formedness requirement.
struct RefutationInstance {
  Cnf cnf;
  BlockOracle<ResolutionNode> nodes;
  std::optional<int> width_cap;  // clauses carry at most width_cap-1 literals

  int64_t num_axioms() const { return (int64_t)cnf.clauses.size(); }
  // Clause at index i, negative indices resolving to axioms.
  Clause clause_at(int64_t i) const {
    if (i < 0) return cnf.clauses.at((size_t)(i + num_axioms()));
    return nodes.fetch((uint64_t)i).clause;
  }
};

enum class InvalidReason : uint8_t {
  None,
  PredOutOfRange,
  ForwardReference,
  PivotMissing,
  WrongResolvent,
  NotASuperset,
  LastNotEmpty,
  WidthCapExceeded,
};

struct Verdict {
  bool valid = true;
  InvalidReason reason = InvalidReason::None;
  static Verdict ok() { return {}; }
  static Verdict bad(InvalidReason r) { return {false, r}; }
};

std::string reason_str(InvalidReason r);

// Node-local validity: derivation rule, predecessor ordering, and (for the
// last node) the empty-clause requirement. Queries at most 3 blocks.
Verdict check_node(const RefutationInstance& inst, int64_t i);

// First invalid node, or nullopt when the refutation is valid. An empty node
// list counts as invalid at 0 (no empty clause).
std::optional<int64_t> verify_refutation(const RefutationInstance& inst);

// All invalid node indices (full scan).
std::vector<int64_t> scan_invalid(const RefutationInstance& inst);

// Whether C has a resolution+weakening derivation from F all of whose clauses
// have width < w0. Saturation over width-bounded clauses, then subset check.
// Errors when an axiom is already too wide or F has too many variables.
bool width_derivable(const Cnf& f, const Clause& c, int w0, int var_cap = 16);

}  // namespace rfl
