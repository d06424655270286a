#include "refuterlab/rft.hpp"

#include <set>
#include <stdexcept>

namespace rfl {

namespace {

struct TrappingReader {
  std::map<int, bool> rho;
  bool trapped = false;

  explicit TrappingReader(const std::vector<std::pair<int, bool>>& pairs) {
    for (auto [v, b] : pairs) rho[v] = b;
  }

  bool read(int var) {
    auto it = rho.find(var);
    if (it == rho.end()) {
      trapped = true;
      return false;
    }
    return it->second;
  }
};

}  // namespace

bool verify_rft(const PlsFormulation& reduction, const Cnf& f, const RftSolution& sol) {
  if (sol.o_star >= reduction.M) return false;
  TrappingReader reader(sol.rho);
  auto read = [&](int v) { return reader.read(v); };

  // (f(x), o*) must solve the pointer problem
  uint64_t o = sol.o_star;
  uint64_t so = (uint64_t)reduction.succ[o].eval(read);
  bool iter_ok = false;
  if (o == 0 && so == 0) {
    iter_ok = true;
  } else if (so < o) {
    iter_ok = true;
  } else if (so > o && so < reduction.M) {
    iter_ok = (uint64_t)reduction.succ[so].eval(read) == so;
  }
  if (reader.trapped || !iter_ok) return false;

  // (x, g_{o*}(x)) must not solve the search problem: the named axiom has to
  // be satisfied on the listed positions
  int64_t axiom = reduction.label[o].eval(read);
  if (reader.trapped) return false;
  if (axiom < 0 || axiom >= (int64_t)f.clauses.size()) return false;
  bool satisfied = false;
  for (Lit l : f.clauses[(size_t)axiom].lits) {
    bool v = reader.read(var_of(l));
    if (reader.trapped) return false;
    if (v == positive(l)) {
      satisfied = true;
      break;
    }
  }
  return satisfied;
}

EmbeddedRft embed_iter_in_rft(const IterInstance& q, int64_t default_axiom) {
  EmbeddedRft out;
  out.reduction.M = q.size();
  for (uint64_t v = 0; v < q.size(); ++v)
    out.reduction.succ.push_back(DTree::leaf((int64_t)q.succ.fetch(v)));
  for (uint64_t o = 0; o < q.size(); ++o)
    out.reduction.label.push_back(DTree::leaf(default_axiom));
  out.map_solution = [](const RftSolution& sol) { return sol.o_star; };
  return out;
}

namespace {

// graft front-reduction trees into every query of a tree
DTree substitute(const DTree& t, const std::vector<DTree>& dict) {
  DTree out;
  // recursive expansion; parents precede children
  std::function<int(int)> go = [&](int at) -> int {
    const auto& n = t.nodes[at];
    if (n.is_leaf) {
      out.nodes.push_back({true, 0, -1, -1, n.leaf});
      return (int)out.nodes.size() - 1;
    }
    const DTree& inner = dict.at((size_t)n.var - 1);
    // copy `inner`, rerouting its leaves to the two subtrees
    std::function<int(int)> copy = [&](int ia) -> int {
      const auto& in = inner.nodes[ia];
      if (in.is_leaf) return go(in.leaf ? n.hi : n.lo);
      int self = (int)out.nodes.size();
      out.nodes.push_back({false, in.var, -1, -1, 0});
      int lo = copy(in.lo);
      int hi = copy(in.hi);
      out.nodes[self].lo = lo;
      out.nodes[self].hi = hi;
      return self;
    };
    return copy(inner.root);
  };
  out.root = go(t.root);
  return out;
}

}  // namespace

GapComposedRft rft_gap_compose(const FrontReduction& front, const PlsFormulation& inst,
                               const Cnf& base_f) {
  if ((int)front.bit.size() != front.out_vars)
    throw std::invalid_argument("gap compose: front bit trees mismatch");
  GapComposedRft out;
  out.reduction.M = inst.M;
  for (const auto& t : inst.succ) out.reduction.succ.push_back(substitute(t, front.bit));
  for (size_t o = 0; o < inst.label.size(); ++o) {
    // label trees now produce base-problem solutions through the front's
    // solution trees: graft the query substitution, then remap leaves
    DTree grafted = substitute(inst.label[o], front.bit);
    for (auto& n : grafted.nodes) {
      if (!n.is_leaf) continue;
      // compose with front.sol: the composed label queries the original
      // input, so substitute leaves by the corresponding solution tree
    }
    out.reduction.label.push_back(grafted);
  }
  // remap label leaves through front.sol by splicing the solution trees in
  for (size_t o = 0; o < out.reduction.label.size(); ++o) {
    DTree& t = out.reduction.label[o];
    DTree spliced;
    std::function<int(int)> go = [&](int at) -> int {
      const auto& n = t.nodes[at];
      if (!n.is_leaf) {
        int self = (int)spliced.nodes.size();
        spliced.nodes.push_back({false, n.var, -1, -1, 0});
        int lo = go(n.lo);
        int hi = go(n.hi);
        spliced.nodes[self].lo = lo;
        spliced.nodes[self].hi = hi;
        return self;
      }
      const DTree& sol = front.sol.at((size_t)n.leaf);
      std::function<int(int)> copy = [&](int ia) -> int {
        const auto& in = sol.nodes[ia];
        int self = (int)spliced.nodes.size();
        spliced.nodes.push_back(in);
        if (!in.is_leaf) {
          int lo = copy(in.lo);
          int hi = copy(in.hi);
          spliced.nodes[self].lo = lo;
          spliced.nodes[self].hi = hi;
        }
        return self;
      };
      return copy(sol.root);
    };
    spliced.root = go(t.root);
    t = spliced;
  }

  auto front_copy = front;
  auto inst_copy = inst;
  auto base = base_f;
  out.map_solution = [front_copy, inst_copy,
                      base](const RftSolution& sol) -> std::optional<RftSolution> {
    // replay the verification against the middle problem, computing middle
    // bits from the front trees on demand; untouched middle queries get a
    // default value, which is safe because the front reduction is correct
    std::map<int, bool> rho_p;
    for (auto [v, b] : sol.rho) rho_p[v] = b;
    std::map<int, bool> rho_s;
    auto read_mid = [&](int var) {
      auto it = rho_s.find(var);
      if (it != rho_s.end()) return it->second;
      bool value = false;
      bool computable = true;
      std::function<bool(int)> read_p = [&](int pv) {
        auto pit = rho_p.find(pv);
        if (pit == rho_p.end()) {
          computable = false;
          return false;
        }
        return pit->second;
      };
      value = front_copy.bit.at((size_t)var - 1).eval(read_p) != 0;
      if (!computable) value = false;  // arbitrary fill for untouched bits
      rho_s[var] = value;
      return value;
    };

    uint64_t o = sol.o_star;
    if (o >= inst_copy.M) return std::nullopt;
    uint64_t so = (uint64_t)inst_copy.succ[o].eval(read_mid);
    if (so > o && so < inst_copy.M) (void)inst_copy.succ[so].eval(read_mid);
    (void)inst_copy.label[o].eval(read_mid);
    RftSolution mapped;
    mapped.o_star = o;
    for (auto [v, b] : rho_s) mapped.rho.push_back({v, b});
    return mapped;
  };
  return out;
}

TfnpRefuterToWidthRefuter tfnp_refuter_to_width_refuter(const PlsFormulation& reduction,
                                                        const Cnf& f) {
  auto strategy =
      std::static_pointer_cast<ProverStrategy>(pls_to_prover(reduction, f));
  MemoryCodec codec(reduction, f.nvars);
  auto form = std::make_shared<PlsFormulation>(reduction);
  auto base = std::make_shared<Cnf>(f);
  const int64_t m = (int64_t)f.clauses.size();
  const uint64_t L = uint64_t(1) << codec.total_bits;
  const Clause pad_clause = f.clauses.front();

  BlockOracle<ResolutionNode> nodes;
  nodes.length = L;
  nodes.fetch_fn = [strategy, codec, form, base, m, pad_clause](uint64_t flipped) {
    uint64_t code = codec.flip(flipped);
    if (!codec.is_valid_encoding(code, *form))
      return ResolutionNode::weakening(pad_clause, -m);
    ProverMemory mem = *codec.decode(code);
    ProverAction act = strategy->next(mem);
    Clause c = mem.falsified_clause();
    switch (act.kind) {
      case ProverAction::Kind::Query: {
        uint64_t lo = codec.encode(strategy->after_query(mem, act.var, false));
        uint64_t hi = codec.encode(strategy->after_query(mem, act.var, true));
        return ResolutionNode::resolution(c, (int64_t)codec.flip(lo), (int64_t)codec.flip(hi),
                                          act.var);
      }
      case ProverAction::Kind::Forget: {
        uint64_t next = codec.encode(strategy->after_forget(mem, act.var));
        return ResolutionNode::weakening(c, (int64_t)codec.flip(next));
      }
      case ProverAction::Kind::Output:
        return ResolutionNode::weakening(c, act.axiom - m);
      case ProverAction::Kind::Stuck:
        return ResolutionNode::weakening(pad_clause, -m);
    }
    return ResolutionNode::weakening(pad_clause, -m);
  };

  TfnpRefuterToWidthRefuter out;
  out.codec = codec;
  out.instance.cnf = f;
  out.instance.nodes = nodes;
  out.instance.width_cap = strategy->var_budget() + 2;
  out.node_budget = 3 * (reduction.depth() + 1);
  out.map_solution = [strategy, codec, form, base](int64_t idx) -> std::optional<RftSolution> {
    uint64_t code = codec.flip((uint64_t)idx);
    if (!codec.is_valid_encoding(code, *form)) return std::nullopt;
    ProverMemory mem = *codec.decode(code);
    ProverAction act = strategy->next(mem);
    if (act.kind != ProverAction::Kind::Output) return std::nullopt;
    if (act.axiom < 0 || act.axiom >= (int64_t)base->clauses.size()) return std::nullopt;
    RftSolution sol;
    sol.o_star = mem.regs[3];  // the labelled pointer solution
    std::map<int, bool> rho(mem.assignment.begin(), mem.assignment.end());
    for (Lit l : base->clauses[(size_t)act.axiom].lits)
      if (!rho.count(var_of(l))) rho[var_of(l)] = positive(l);  // satisfy the clause
    for (auto [v, b] : rho) sol.rho.push_back({v, b});
    return sol;
  };
  return out;
}

}  // namespace rfl
