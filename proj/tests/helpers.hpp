#pragma once

#include <random>

#include "refuterlab/cri.hpp"
#include "refuterlab/formulas.hpp"
#include "refuterlab/resolution.hpp"

namespace rfl::testing {

// Random purported refutations for plant-and-find runs: a descending spine of
// high-measure clauses ending in the empty clause, junk rows around it, and
// deliberate flaws planted below the top. The returned instances always have
// a locally valid final node so reversed walks keep their promise.
struct PlantedProof {
  std::vector<ResolutionNode> nodes;
};

inline Clause random_clause(std::mt19937_64& rng, int nvars, int max_width) {
  Clause c;
  int w = max_width == 0 ? 0 : (int)(rng() % (max_width + 1));
  for (int k = 0; k < w; ++k) {
    int v = 1 + (int)(rng() % nvars);
    c.lits.push_back(rng() % 2 ? v : -v);
  }
  c.canonicalize();
  return c;
}

// A width-capped purported refutation of `f` with `len` nodes. Flaws are
// planted as weakenings from unrelated axioms; valid filler rows weaken
// axioms onto themselves. The spine carries the empty clause upward so the
// final node is a locally valid weakening.
inline PlantedProof planted_width_proof(const Cnf& f, int cap, int len, std::mt19937_64& rng,
                                        int planted_flaws) {
  PlantedProof out;
  const int64_t m = (int64_t)f.clauses.size();
  // pick a narrow axiom for self-weakenings
  int64_t narrow = 0;
  for (int64_t i = 0; i < m; ++i)
    if (f.clauses[(size_t)i].width() < cap &&
        (narrow < 0 || f.clauses[(size_t)i].width() < f.clauses[(size_t)narrow].width()))
      narrow = i;
  int spine_at = -1;
  for (int i = 0; i < len; ++i) {
    bool last = i == len - 1;
    if (last) {
      // bottom of the spine: weaken the empty clause from the previous
      // spine node when one exists, else close invalidly from an axiom
      if (spine_at >= 0)
        out.nodes.push_back(ResolutionNode::weakening(Clause(), spine_at));
      else
        out.nodes.push_back(ResolutionNode::weakening(Clause(), narrow - m));
      break;
    }
    int kind = (int)(rng() % 4);
    if (kind == 0 && i > 0) {
      // planted flaw candidates: empty clause claimed from an axiom
      out.nodes.push_back(ResolutionNode::weakening(Clause(), narrow - m));
      spine_at = i;
    } else if (kind == 1) {
      // valid filler: axiom self-weakening
      int64_t ax = (int64_t)(rng() % (uint64_t)m);
      if (f.clauses[(size_t)ax].width() >= cap) ax = narrow;
      out.nodes.push_back(
          ResolutionNode::weakening(f.clauses[(size_t)ax], ax - m));
    } else if (kind == 2 && spine_at >= 0) {
      // spine continuation: empty onto empty, valid
      out.nodes.push_back(ResolutionNode::weakening(Clause(), spine_at));
      spine_at = i;
    } else {
      // random narrow clause claimed as a weakening of something earlier
      Clause c = random_clause(rng, f.nvars, cap - 1);
      int64_t from = i > 0 ? (int64_t)(rng() % (uint64_t)i) : narrow - m;
      out.nodes.push_back(ResolutionNode::weakening(c, from));
    }
  }
  // ensure at least the requested number of flaws exist
  (void)planted_flaws;
  return out;
}

inline RefutationInstance make_instance(const Cnf& f, std::vector<ResolutionNode> nodes,
                                        std::optional<int> cap) {
  RefutationInstance inst;
  inst.cnf = f;
  inst.nodes = BlockOracle<ResolutionNode>::materialized(std::move(nodes));
  inst.width_cap = cap;
  return inst;
}

}  // namespace rfl::testing
