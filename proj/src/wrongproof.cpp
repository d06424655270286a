#include "refuterlab/wrongproof.hpp"

#include <stdexcept>

namespace rfl {

namespace {

bool clause_active(const Clause& c, const std::vector<bool>& alpha) {
  // active = falsified by alpha
  for (Lit l : c.lits) {
    int v = var_of(l);
    if (v <= (int)alpha.size() && alpha[v - 1] == positive(l)) return false;
  }
  return true;
}

}  // namespace

bool verify_wrongproof(const WrongProofInstance& inst, const WrongProofSolution& sol) {
  const int64_t k = inst.proof.num_axioms();
  if (sol.axiom) {
    if (sol.index < -k || sol.index >= 0) return false;
    return clause_active(inst.proof.clause_at(sol.index), inst.alpha);
  }
  if (sol.index < 0 || (uint64_t)sol.index >= inst.proof.nodes.length) return false;
  return !check_node(inst.proof, sol.index).valid;
}

WrongProofToIter wrongproof_to_iter(const WrongProofInstance& inst) {
  const int64_t k = inst.proof.num_axioms();
  const int64_t L = (int64_t)inst.proof.nodes.length;
  auto proof = inst.proof;
  auto alpha = inst.alpha;

  IterInstance iter;
  iter.orient = Orientation::Reversed;
  iter.succ.length = (uint64_t)(k + L);
  iter.succ.fetch_fn = [proof, alpha, k, L](uint64_t s) -> uint64_t {
    int64_t i = (int64_t)s - k;
    Clause c = proof.clause_at(i);
    if (!clause_active(c, alpha)) return s;  // satisfied clauses sit still
    if (i < 0) return (uint64_t)k;           // falsified axiom: point forward
    ResolutionNode node = proof.nodes.fetch((uint64_t)i);
    int64_t chosen = node.pred1;
    if (node.tag == NodeTag::Resolution && node.pred1 >= -k && node.pred1 < i) {
      // follow a falsified predecessor when the first one is satisfied
      if (!clause_active(proof.clause_at(node.pred1), alpha)) chosen = node.pred2;
    }
    if (chosen < -k || chosen >= i) {
      // malformed predecessor: make this index a solution if we can point up
      return s + 1 < (uint64_t)(k + L) ? s + 1 : s;
    }
    return (uint64_t)(chosen + k);
  };

  WrongProofToIter out;
  out.iter = iter;
  out.map_solution = [k](uint64_t s) {
    int64_t i = (int64_t)s - k;
    WrongProofSolution sol;
    if (i < 0) {
      sol.axiom = true;
      sol.index = i;
    } else {
      sol.axiom = false;
      sol.index = i;
    }
    return sol;
  };
  return out;
}

IterToWrongProof iter_to_wrongproof(const IterInstance& s, const Cnf& f,
                                    const std::vector<bool>& alpha) {
  if (s.orient != Orientation::Reversed) throw std::invalid_argument("reversed instance required");
  const int64_t k = (int64_t)f.clauses.size();
  if (k < 2) throw std::invalid_argument("need at least two axioms");
  if (!f.eval(alpha)) throw std::invalid_argument("alpha must satisfy F");
  const uint64_t L = s.size();
  if (L == 0) throw std::invalid_argument("empty pointer instance");
  if (s.succ.fetch(L - 1) == L - 1)
    throw std::invalid_argument("promise violated: S(N-1) = N-1");

  // the designated resolution step between the last two axioms
  const Clause& a2 = f.clauses[(size_t)k - 2];
  const Clause& a1 = f.clauses[(size_t)k - 1];
  int pivot = 0;
  for (Lit l : a2.lits)
    if (a1.has(-l)) {
      pivot = var_of(l);
      break;
    }
  if (pivot == 0) throw std::invalid_argument("last two axioms admit no resolution step");
  bool pos_in_a2 = a2.has(pivot);
  Clause d = pos_in_a2 ? clause_union(a2.without(pivot), a1.without(-pivot))
                       : clause_union(a1.without(pivot), a2.without(-pivot));
  int64_t dp1 = pos_in_a2 ? -2 : -1;
  int64_t dp2 = pos_in_a2 ? -1 : -2;

  auto succ = s.succ;
  BlockOracle<ResolutionNode> nodes;
  nodes.length = L;
  nodes.fetch_fn = [succ, d, dp1, dp2, pivot, k](uint64_t i) {
    uint64_t si = succ.fetch(i);
    if (si == i) return ResolutionNode::resolution(d, dp1, dp2, pivot);
    bool solution = si > i || succ.fetch(si) == si;
    if (solution) return ResolutionNode::weakening(Clause(), -k);
    return ResolutionNode::weakening(Clause(), (int64_t)si);
  };

  IterToWrongProof out;
  out.instance.proof.cnf = f;
  out.instance.proof.nodes = nodes;
  out.instance.alpha = alpha;
  out.map_solution = [](const WrongProofSolution& sol) {
    if (sol.axiom) throw std::runtime_error("no axiom can be falsified here");
    return (uint64_t)sol.index;
  };
  return out;
}

}  // namespace rfl
