#include "refuterlab/size_refuters.hpp"

#include <stdexcept>

#include "refuterlab/formulas.hpp"

namespace rfl {

namespace {

// Exit-style walk shared by the size reductions: broken-or-fat nodes point
// upward and elect themselves, low-measure clauses sit still, the rest
// descend along the predecessor of larger measure. Pointer solutions are then
// exactly the broken-or-fat nodes (plus, at unsound thresholds, mid-band
// stops caught by the solution maps).
struct ExitWalk {
  RefutationInstance inst;
  int scale = 0;  // 2/3 threshold scale
  std::function<bool(const Clause&)> fat;
  std::function<int(const Clause&)> measure;

  uint64_t step(uint64_t i) const {
    const uint64_t L = inst.nodes.length;
    ResolutionNode node = inst.nodes.fetch(i);
    bool exit = !check_node(inst, (int64_t)i).valid || fat(node.clause);
    if (exit) return i + 1 < L ? i + 1 : i;
    if (3 * measure(node.clause) < 2 * scale) return i;
    int64_t chosen = node.pred1;
    if (node.tag == NodeTag::Resolution) {
      int c1 = measure(inst.clause_at(node.pred1));
      int c2 = measure(inst.clause_at(node.pred2));
      chosen = c1 >= c2 ? node.pred1 : node.pred2;
    }
    if (chosen < 0) return i;
    return (uint64_t)chosen;
  }

  IterInstance instance() const {
    auto self = std::make_shared<ExitWalk>(*this);
    IterInstance iter;
    iter.orient = Orientation::Reversed;
    iter.succ.length = inst.nodes.length;
    iter.succ.fetch_fn = [self](uint64_t i) { return self->step(i); };
    return iter;
  }
};

}  // namespace

PhpSizeReduction php_size_refuter_to_rwphp(const RefutationInstance& inst,
                                           const PhpSizeParams& p) {
  if (inst.nodes.length != p.L)
    throw std::invalid_argument("php size refuter: proof length != L");
  CountingCheck check = php_union_bound(p.n, p.t, p.W_int, p.L);
  if (!check.codec_feasible)
    throw std::invalid_argument("php size refuter: non-positive BAD factor (" + check.lhs +
                                " vs " + check.rhs + ")");
  if (!check.holds && !p.force)
    throw std::invalid_argument("php size refuter: counting premise fails: 2*|BAD|*L = " +
                                check.lhs + " > |SEQ| = " + check.rhs);

  PhpSizeReduction out;
  out.seq = SeqSpace{p.n, p.t};
  out.bad = BadSpace{p.n, p.t, p.W_int};
  const uint64_t bad_size = out.bad.size_u64();
  const int n = p.n, W = p.W_int;
  const SeqSpace seq = out.seq;
  const BadSpace bad = out.bad;
  auto proof = inst;

  out.rw.M = p.L * bad_size;
  out.rw.N = out.seq.size_u64();
  out.rw.allow_small_stretch = 2 * out.rw.M > out.rw.N;
  out.rw.problem = iter_inner_problem();

  out.rw.f = [proof, seq, bad, bad_size](uint64_t x) -> uint64_t {
    uint64_t i = x / bad_size, b = x % bad_size;
    Clause c = proof.nodes.fetch(i).clause;
    auto s = bad_to_seq(c, b, seq, bad);
    return s ? *s : 0;
  };

  out.rw.inner = [proof, seq, n, W](uint64_t y) {
    MatchingRestriction m = seq.decode_to_matching(y);
    auto rho = std::make_shared<Restriction>(m.induced());
    auto pigeons = std::make_shared<std::vector<int>>(m.remaining_pigeons());
    auto holes = std::make_shared<std::vector<int>>(m.remaining_holes());
    ExitWalk w2;
    w2.inst = proof;
    w2.scale = (int)holes->size();
    w2.fat = [rho, holes, n, W](const Clause& c) {
      RestrictedClause rc = restrict_clause(c, *rho);
      return !rc.killed && mono_sub(rc.clause, n, *holes).width() >= W;
    };
    w2.measure = [rho, pigeons, holes, n](const Clause& c) {
      RestrictedClause rc = restrict_clause(c, *rho);
      if (rc.killed) return 0;
      return cri_mono_php_sub(*pigeons, *holes, n, rc.clause).value;
    };
    return w2.instance();
  };

  out.rw.label = [proof, seq, bad, bad_size, n, W](uint64_t y, const uint64_t& ans) -> uint64_t {
    if (ans >= proof.nodes.length) return 0;
    Clause c = proof.nodes.fetch(ans).clause;
    MatchingRestriction m = seq.decode_to_matching(y);
    RestrictedClause rc = restrict_clause(c, m.induced());
    if (rc.killed || mono_sub(rc.clause, n, m.remaining_holes()).width() < W) return 0;
    auto b = seq_to_bad(c, y, seq, bad);
    if (!b) return 0;
    return ans * bad_size + *b;
  };

  out.map_solution = [proof, seq, n, W](uint64_t y, uint64_t ans) -> int64_t {
    if (!check_node(proof, (int64_t)ans).valid) return (int64_t)ans;
    MatchingRestriction m = seq.decode_to_matching(y);
    RestrictedClause rc = restrict_clause(proof.nodes.fetch(ans).clause, m.induced());
    if (!rc.killed && mono_sub(rc.clause, n, m.remaining_holes()).width() >= W)
      throw std::runtime_error("php size refuter: fat answer should be excluded by f o g");
    throw std::runtime_error(
        "php size refuter: walk stopped at a valid mid-band clause; the width threshold "
        "exceeds the sound range for these parameters");
  };
  return out;
}

TseitinSizeReduction tseitin_size_refuter_to_rwphp(const Graph& g, const std::vector<bool>& tau,
                                                   const RefutationInstance& inst,
                                                   const TseitinSizeParams& p) {
  if (!odd_weighted(tau)) throw std::invalid_argument("tseitin size refuter: tau not odd");
  TseitinSizeReduction out;
  out.expansion_e = expansion(g);
  out.w = out.expansion_e - p.t;
  if (out.w <= 0) throw std::invalid_argument("tseitin size refuter: e(G) - t <= 0");
  if (inst.nodes.length != p.L)
    throw std::invalid_argument("tseitin size refuter: proof length != L");
  CountingCheck check = tseitin_union_bound(g.m(), p.t, out.w, p.L);
  if (!check.codec_feasible)
    throw std::invalid_argument("tseitin size refuter: non-positive BAD factor");
  if (!check.holds && !p.force)
    throw std::invalid_argument("tseitin size refuter: counting premise fails: 2*|BAD|*L = " +
                                check.lhs + " > |R| = " + check.rhs);

  out.seq = EdgeSeqSpace{g.m(), p.t};
  out.bad = EdgeBadSpace{g.m(), p.t, out.w};
  const uint64_t bad_size = out.bad.size_u64();
  const int w = out.w;
  const EdgeSeqSpace seq = out.seq;
  const EdgeBadSpace bad = out.bad;
  auto proof = inst;
  auto graph = g;
  auto tau_copy = tau;

  // per-restriction context: shrunken graph, flipped charges, variable renames
  struct RestrictedTseitin {
    Graph g2;
    std::vector<bool> t2;
    Restriction rho;
    std::vector<int> edge_keep;

    RestrictedTseitin(const Graph& g, const std::vector<bool>& tau, const EdgeRestriction& r)
        : g2(r.restricted_graph(g)), t2(r.restricted_tau(g, tau)), rho(r.induced()) {
      std::vector<bool> drop(g.m(), false);
      for (auto [e, b] : r.picks) drop[e] = true;
      for (int e = 0; e < g.m(); ++e)
        if (!drop[e]) edge_keep.push_back(e);
    }

    Clause rename(const Clause& c) const {
      Clause renamed;
      for (Lit l : c.lits) {
        int e = var_of(l) - 1;
        auto it = std::lower_bound(edge_keep.begin(), edge_keep.end(), e);
        int e2 = (int)(it - edge_keep.begin());
        renamed.lits.push_back(positive(l) ? e2 + 1 : -(e2 + 1));
      }
      renamed.canonicalize();
      return renamed;
    }

    CriResult cri(const Clause& original) const {
      RestrictedClause rc = restrict_clause(original, rho);
      if (rc.killed) return {};
      return cri_tseitin(g2, t2, rename(rc.clause));
    }
  };

  out.rw.M = p.L * bad_size;
  out.rw.N = out.seq.size_u64();
  out.rw.allow_small_stretch = 2 * out.rw.M > out.rw.N;
  out.rw.problem = iter_inner_problem();

  out.rw.f = [proof, seq, bad, bad_size](uint64_t x) -> uint64_t {
    uint64_t i = x / bad_size, b = x % bad_size;
    Clause c = proof.nodes.fetch(i).clause;
    auto s = edge_bad_to_seq(c, b, seq, bad);
    return s ? *s : 0;
  };

  out.rw.inner = [proof, seq, graph, tau_copy, w](uint64_t y) {
    auto ctx = std::make_shared<RestrictedTseitin>(graph, tau_copy, seq.decode(y));
    ExitWalk w2;
    w2.inst = proof;
    w2.scale = graph.n;
    w2.fat = [ctx, w](const Clause& c) {
      RestrictedClause rc = restrict_clause(c, ctx->rho);
      return !rc.killed && rc.clause.width() >= w;
    };
    w2.measure = [ctx](const Clause& c) { return ctx->cri(c).value; };
    return w2.instance();
  };

  out.rw.label = [proof, seq, bad, bad_size, w](uint64_t y, const uint64_t& ans) -> uint64_t {
    if (ans >= proof.nodes.length) return 0;
    Clause c = proof.nodes.fetch(ans).clause;
    EdgeRestriction r = seq.decode(y);
    RestrictedClause rc = restrict_clause(c, r.induced());
    if (rc.killed || rc.clause.width() < w) return 0;
    auto b = edge_seq_to_bad(c, y, seq, bad);
    if (!b) return 0;
    return ans * bad_size + *b;
  };

  auto inner_builder = out.rw.inner;
  out.map_solution = [proof, seq, graph, tau_copy, w, inner_builder](
                         uint64_t y, uint64_t ans) -> WidthRefuterAnswer {
    WidthRefuterAnswer a;
    if (!check_node(proof, (int64_t)ans).valid) {
      a.kind = WidthRefuterAnswer::Kind::InvalidNode;
      a.node = (int64_t)ans;
      return a;
    }
    RestrictedTseitin ctx(graph, tau_copy, seq.decode(y));
    RestrictedClause rc = restrict_clause(proof.nodes.fetch(ans).clause, ctx.rho);
    if (!rc.killed && rc.clause.width() >= w)
      throw std::runtime_error("tseitin size refuter: fat answer should be excluded by f o g");
    // mid-band stop: the walk target's critical set cuts the restricted graph
    // across at most w-1 edges, so together with the t removed ones it stays
    // below e(G)
    IterInstance walk = inner_builder(y);
    uint64_t m = walk.succ.fetch(ans);
    if (m == ans || walk.succ.fetch(m) != m)
      throw std::runtime_error("tseitin size refuter: answer is not a walk solution");
    a.kind = WidthRefuterAnswer::Kind::CutWitness;
    a.node = (int64_t)m;
    a.cut = ctx.cri(proof.nodes.fetch(m).clause).critical_set;
    return a;
  };
  return out;
}

InnerProblem<RefutationInstance, int64_t> width_refuter_inner_problem() {
  InnerProblem<RefutationInstance, int64_t> p;
  p.verify = [](const RefutationInstance& inst, const int64_t& i) {
    if (i < 0 || (uint64_t)i >= inst.nodes.length) return false;
    return !check_node(inst, i).valid;
  };
  p.solve = [](const RefutationInstance& inst) -> std::optional<int64_t> {
    return verify_refutation(inst);
  };
  return p;
}

namespace {

// Map a restricted lifted clause onto base variables: the surviving half of
// pair i with sign s denotes z_i^(s xor value_i).
Clause xor_project(const Clause& restricted, const XorRestriction& r) {
  Clause out;
  for (Lit l : restricted.lits) {
    int v = var_of(l);
    int pair = (v + 1) / 2;  // x_i = 2i-1, y_i = 2i
    bool s = positive(l);
    bool z_sign = s ^ r.flip(pair - 1);
    out.lits.push_back(z_sign ? pair : -pair);
  }
  out.canonicalize();
  return out;
}

Clause truncate_clause(const Clause& c, int w) {
  if (c.width() <= w) return c;
  Clause out;
  out.lits.assign(c.lits.begin(), c.lits.begin() + w);
  return out;
}

}  // namespace

XorLiftReduction xorlift_size_refuter_to_rwphp(const Cnf& base_f,
                                               const RefutationInstance& inst,
                                               const XorLiftParams& p) {
  const int n = base_f.nvars;
  const uint64_t L = inst.nodes.length;
  // lifted axiom index -> generating base axiom (the lift emits 2^width
  // copies per base clause, in order)
  auto lifted_of = std::make_shared<std::vector<int64_t>>();
  for (int64_t b = 0; b < (int64_t)base_f.clauses.size(); ++b)
    for (uint64_t r = 0; r < (uint64_t(1) << base_f.clauses[(size_t)b].width()); ++r)
      lifted_of->push_back(b);
  if (lifted_of->size() != inst.cnf.clauses.size())
    throw std::invalid_argument("xorlift refuter: proof axioms are not the lift of base_f");
  CountingCheck check = xor_union_bound(n, p.w, L);
  if (!check.holds && !p.force)
    throw std::invalid_argument("xorlift refuter: counting premise fails: " + check.lhs +
                                " >= " + check.rhs);
  const uint64_t bound = [&] {
    BigUint b = xor_short_bound(n, p.w);
    if (b.limbs.size() > 2) throw std::overflow_error("short-code space too large");
    uint64_t v = 0;
    for (size_t i = b.limbs.size(); i-- > 0;) v = (v << 32) | b.limbs[i];
    return v;
  }();
  const int w = p.w;
  auto proof = inst;
  auto base = base_f;

  XorLiftReduction out;
  out.rw.M = L * bound;
  out.rw.N = uint64_t(1) << (2 * n);
  out.rw.allow_small_stretch = 2 * out.rw.M > out.rw.N;
  out.rw.problem = width_refuter_inner_problem();

  out.rw.f = [proof, n, bound](uint64_t x) -> uint64_t {
    uint64_t i = x / bound, code = x % bound;
    Clause c = proof.nodes.fetch(i).clause;
    auto r = xor_short_decode(n, c, code);
    return r ? xor_standard_encode(*r) : 0;
  };

  const int64_t m_lift = (int64_t)inst.cnf.clauses.size();
  out.rw.inner = [proof, base, n, w, lifted_of, m_lift](uint64_t y) {
    XorRestriction r = xor_standard_decode(n, y);
    auto rho = std::make_shared<Restriction>(r.induced());
    auto rr = std::make_shared<XorRestriction>(r);
    const int64_t maxioms = (int64_t)base.clauses.size();
    Clause first_axiom = base.clauses.front();
    // negative predecessors name lifted axioms; live nodes only reference
    // surviving copies, which restrict to their generating base axiom
    auto map_pred = [lifted_of, m_lift, maxioms](int64_t p) {
      if (p >= 0) return p;
      int64_t la = p + m_lift;
      if (la < 0 || la >= (int64_t)lifted_of->size()) return -maxioms;  // junk stays junk
      return (*lifted_of)[(size_t)la] - maxioms;
    };
    BlockOracle<ResolutionNode> nodes;
    nodes.length = proof.nodes.length;
    auto src = proof.nodes;
    nodes.fetch_fn = [src, rho, rr, w, maxioms, first_axiom, map_pred](uint64_t i) {
      ResolutionNode orig = src.fetch(i);
      RestrictedClause rc = restrict_clause(orig.clause, *rho);
      if (rc.killed) return ResolutionNode::weakening(first_axiom, -maxioms);
      Clause projected = truncate_clause(xor_project(rc.clause, *rr), w);
      if (orig.tag == NodeTag::Weakening)
        return ResolutionNode::weakening(projected, map_pred(orig.pred1));
      int pv = orig.pivot;
      int pair = (pv + 1) / 2;
      bool is_x = pv % 2 == 1;
      bool assigned = pair >= 1 && pair <= (int)rr->set_x.size() &&
                      rr->set_x[pair - 1] == is_x;
      if (assigned) {
        bool bit = rr->value[pair - 1];
        int64_t survivor = bit ? orig.pred2 : orig.pred1;
        return ResolutionNode::weakening(projected, map_pred(survivor));
      }
      bool flip = pair >= 1 && pair <= (int)rr->value.size() && rr->flip(pair - 1);
      if (!flip)
        return ResolutionNode::resolution(projected, map_pred(orig.pred1),
                                          map_pred(orig.pred2), pair);
      return ResolutionNode::resolution(projected, map_pred(orig.pred2),
                                        map_pred(orig.pred1), pair);
    };
    RefutationInstance out_inst;
    out_inst.cnf = base;
    out_inst.nodes = nodes;
    out_inst.width_cap = w + 1;
    return out_inst;
  };

  out.rw.label = [proof, n, w, bound](uint64_t y, const int64_t& ans) -> uint64_t {
    if (ans < 0 || (uint64_t)ans >= proof.nodes.length) return 0;
    XorRestriction r = xor_standard_decode(n, y);
    Clause c = proof.nodes.fetch((uint64_t)ans).clause;
    RestrictedClause rc = restrict_clause(c, r.induced());
    if (rc.killed || rc.clause.width() < w) return 0;
    auto code = xor_short_encode(n, c, r);
    if (!code || *code >= bound) return 0;
    return (uint64_t)ans * bound + *code;
  };

  out.map_solution = [proof, n, w](uint64_t y, int64_t ans) -> int64_t {
    if (!check_node(proof, ans).valid) return ans;
    XorRestriction r = xor_standard_decode(n, y);
    RestrictedClause rc = restrict_clause(proof.nodes.fetch((uint64_t)ans).clause, r.induced());
    if (!rc.killed && rc.clause.width() >= w)
      throw std::runtime_error("xorlift refuter: fat answer should be excluded by f o g");
    throw std::runtime_error("xorlift refuter: flagged node is valid in the lifted proof");
  };
  return out;
}

}  // namespace rfl
