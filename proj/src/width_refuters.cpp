#include "refuterlab/width_refuters.hpp"

#include <stdexcept>

#include "refuterlab/formulas.hpp"

namespace rfl {

namespace {

// Shared 1/3-2/3 walk: self-loop below the 2/3 threshold or at locally
// invalid nodes, otherwise follow the predecessor of larger measure (ties to
// the first). Thresholds compare 3*cri against 2*scale exactly.
struct CriWalk {
  RefutationInstance inst;
  int scale;  // n for PHP families, |V| for Tseitin
  std::function<int(const Clause&)> measure;

  uint64_t step(uint64_t i) const {
    if (!check_node(inst, (int64_t)i).valid) return i;
    ResolutionNode node = inst.nodes.fetch(i);
    if (3 * measure(node.clause) < 2 * scale) return i;
    int64_t chosen = node.pred1;
    if (node.tag == NodeTag::Resolution) {
      int c1 = measure(inst.clause_at(node.pred1));
      int c2 = measure(inst.clause_at(node.pred2));
      chosen = c1 >= c2 ? node.pred1 : node.pred2;
    }
    // a valid node above the threshold never hangs off an axiom (its measure
    // would exceed what axioms allow); keep S total anyway
    if (chosen < 0) return i;
    return (uint64_t)chosen;
  }
};

IterInstance walk_instance(std::shared_ptr<CriWalk> w) {
  IterInstance iter;
  iter.orient = Orientation::Reversed;
  iter.succ.length = w->inst.nodes.length;
  iter.succ.fetch_fn = [w](uint64_t i) { return w->step(i); };
  return iter;
}

}  // namespace

WalkReduction ephp_width_refuter_to_iter(const RefutationInstance& inst, int n) {
  if (n < 4) throw std::invalid_argument("ephp walk: need n >= 4");
  auto w = std::make_shared<CriWalk>();
  w->inst = inst;
  w->scale = n;
  w->measure = [n](const Clause& c) { return cri_ephp(n, c).value; };

  WalkReduction out;
  out.iter = walk_instance(w);
  out.map_solution = [w](uint64_t x) {
    WidthRefuterAnswer a;
    uint64_t m = w->step(x);
    if (m != x && !check_node(w->inst, (int64_t)m).valid) {
      a.node = (int64_t)m;
    } else {
      // a narrow clause cannot carry mid-range cri, so validity of m forces
      // the step at x itself to be broken
      a.node = (int64_t)x;
    }
    a.kind = WidthRefuterAnswer::Kind::InvalidNode;
    return a;
  };
  out.entry_budget = 3;
  return out;
}

WalkReduction mono_width_refuter_to_iter(const RefutationInstance& inst, int n) {
  if (n < 4) throw std::invalid_argument("mono walk: need n >= 4");
  auto w = std::make_shared<CriWalk>();
  w->inst = inst;
  w->scale = n;
  w->measure = [n](const Clause& c) { return cri_mono_php(n + 1, n, c).value; };

  WalkReduction out;
  out.iter = walk_instance(w);
  out.map_solution = [w, n](uint64_t x) {
    WidthRefuterAnswer a;
    uint64_t m = w->step(x);
    if (m != x && !check_node(w->inst, (int64_t)m).valid) {
      a.kind = WidthRefuterAnswer::Kind::InvalidNode;
      a.node = (int64_t)m;
      return a;
    }
    if (m != x) {
      // m is valid and below the walk threshold, so its cri sits in the
      // middle band and the mono width bound kicks in
      a.kind = WidthRefuterAnswer::Kind::FatClause;
      a.node = (int64_t)m;
      return a;
    }
    a.kind = WidthRefuterAnswer::Kind::InvalidNode;
    a.node = (int64_t)x;
    return a;
  };
  out.entry_budget = 3;
  return out;
}

WalkReduction tseitin_width_refuter_to_iter(const Graph& g, const std::vector<bool>& tau, int e,
                                            const RefutationInstance& inst) {
  if (!odd_weighted(tau)) throw std::invalid_argument("tseitin walk: tau must be odd-weighted");
  auto w = std::make_shared<CriWalk>();
  w->inst = inst;
  w->scale = g.n;
  auto graph = g;
  auto t = tau;
  w->measure = [graph, t](const Clause& c) { return cri_tseitin(graph, t, c).value; };

  WalkReduction out;
  out.iter = walk_instance(w);
  out.map_solution = [w, graph, t](uint64_t x) {
    WidthRefuterAnswer a;
    uint64_t m = w->step(x);
    if (m != x && !check_node(w->inst, (int64_t)m).valid) {
      a.kind = WidthRefuterAnswer::Kind::InvalidNode;
      a.node = (int64_t)m;
      return a;
    }
    if (m != x) {
      // the critical set of a mid-band clause is a balanced cut crossed only
      // by variables of the clause, hence sparse
      a.kind = WidthRefuterAnswer::Kind::CutWitness;
      a.node = (int64_t)m;
      a.cut = cri_tseitin(graph, t, w->inst.clause_at((int64_t)m)).critical_set;
      return a;
    }
    a.kind = WidthRefuterAnswer::Kind::InvalidNode;
    a.node = (int64_t)x;
    return a;
  };
  out.entry_budget = 3;
  return out;
}

WalkReduction universal_width_refuter_to_iter(const Cnf& f, int w0,
                                              const RefutationInstance& inst) {
  if (width_derivable(f, Clause(), w0))
    throw std::invalid_argument("universal walk: w0 is not a width lower bound for F");
  const uint64_t L = inst.nodes.length;
  auto proof = inst;
  auto derivable = [f, w0](const Clause& c) { return width_derivable(f, c, w0); };

  IterInstance iter;
  iter.orient = Orientation::Reversed;
  iter.succ.length = L;
  iter.succ.fetch_fn = [proof, derivable, L](uint64_t i) -> uint64_t {
    ResolutionNode node = proof.nodes.fetch(i);
    if (derivable(node.clause)) return i;
    auto point_up = [&](uint64_t at) { return at + 1 < L ? at + 1 : at; };
    int64_t p1 = node.pred1;
    if (p1 >= (int64_t)i) return point_up(i);  // forward reference
    if (node.tag == NodeTag::Weakening)
      return p1 >= 0 ? (uint64_t)p1 : point_up(i);  // axiom predecessors derive everything
    if (p1 >= 0 && !derivable(proof.clause_at(p1))) return (uint64_t)p1;
    int64_t p2 = node.pred2;
    if (p2 >= (int64_t)i) return point_up(i);
    if (p2 >= 0) return (uint64_t)p2;  // chosen without reading: if derivable, i is broken
    return point_up(i);
  };

  WalkReduction out;
  out.iter = iter;
  out.map_solution = [](uint64_t x) {
    // both solution branches pin the fault on x itself: either a pointer
    // irregularity, or all predecessors derive in small width while x's
    // clause does not, which no valid step allows
    WidthRefuterAnswer a;
    a.kind = WidthRefuterAnswer::Kind::InvalidNode;
    a.node = (int64_t)x;
    return a;
  };
  out.entry_budget = 2;
  return out;
}

IterToWidthRefuter iter_to_width_refuter(const IterInstance& s, const Cnf& f,
                                         bool verify_bound) {
  if (s.orient != Orientation::Reversed)
    throw std::invalid_argument("iter_to_width_refuter: reversed instance required");
  const int w0 = f.width();
  if (verify_bound && width_derivable(f, Clause(), w0 + 1))
    throw std::invalid_argument("iter_to_width_refuter: F refutable within its own width");
  const uint64_t L = s.size();
  if (L == 0) throw std::invalid_argument("empty pointer instance");
  const int64_t k = (int64_t)f.clauses.size();
  const Clause first_axiom = f.clauses.front();

  auto succ = s.succ;
  BlockOracle<ResolutionNode> nodes;
  nodes.length = L;
  nodes.fetch_fn = [succ, first_axiom, k](uint64_t i) {
    uint64_t si = succ.fetch(i);
    if (si == i) return ResolutionNode::weakening(first_axiom, -k);
    bool solution = si > i || succ.fetch(si) == si;
    if (solution) return ResolutionNode::weakening(Clause(), -k);
    return ResolutionNode::weakening(Clause(), (int64_t)si);
  };

  IterToWidthRefuter out;
  out.instance.cnf = f;
  out.instance.nodes = nodes;
  out.instance.width_cap = w0 + 1;
  out.map_solution = [](int64_t invalid_node) { return (uint64_t)invalid_node; };
  return out;
}

bool verify_ephp_width_answer(const RefutationInstance& inst, int /*n*/,
                              const WidthRefuterAnswer& a) {
  if (a.kind != WidthRefuterAnswer::Kind::InvalidNode) return false;
  if (a.node < 0 || (uint64_t)a.node >= inst.nodes.length) return false;
  return !check_node(inst, a.node).valid;
}

bool verify_mono_width_answer(const RefutationInstance& inst, int n,
                              const WidthRefuterAnswer& a) {
  if (a.node < 0 || (uint64_t)a.node >= inst.nodes.length) return false;
  if (a.kind == WidthRefuterAnswer::Kind::InvalidNode) return !check_node(inst, a.node).valid;
  if (a.kind != WidthRefuterAnswer::Kind::FatClause) return false;
  Clause mc = mono(inst.clause_at(a.node), n);
  return 9 * mc.width() >= 2 * n * n;
}

bool verify_tseitin_width_answer(const Graph& g, const std::vector<bool>& /*tau*/, int e,
                                 const RefutationInstance& inst, const WidthRefuterAnswer& a) {
  if (a.kind == WidthRefuterAnswer::Kind::InvalidNode) {
    if (a.node < 0 || (uint64_t)a.node >= inst.nodes.length) return false;
    return !check_node(inst, a.node).valid;
  }
  if (a.kind != WidthRefuterAnswer::Kind::CutWitness) return false;
  int size = (int)a.cut.size();
  if (3 * size < g.n || 3 * size > 2 * g.n) return false;
  std::vector<bool> in_set(g.n, false);
  for (int v : a.cut) {
    if (v < 0 || v >= g.n) return false;
    in_set[v] = true;
  }
  int crossing = 0;
  for (auto [u, v] : g.edges)
    if (in_set[u] != in_set[v]) ++crossing;
  return crossing < e;
}

}  // namespace rfl
