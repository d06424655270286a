#include "refuterlab/prover.hpp"

#include <stdexcept>

namespace rfl {

Clause ProverMemory::falsified_clause() const {
  Clause c;
  for (auto [v, b] : assignment) c.lits.push_back(b ? -v : v);
  c.canonicalize();
  return c;
}

namespace {

std::string memory_key(const ProverMemory& m) {
  std::string k;
  for (uint64_t r : m.regs) k += std::to_string(r) + ",";
  k += "|";
  for (auto [v, b] : m.assignment) k += std::to_string(v) + (b ? "+" : "-");
  return k;
}

}  // namespace

CompiledProof prover_to_resolution(const ProverStrategy& strategy, const Cnf& f,
                                   uint64_t step_cap) {
  CompiledProof out;
  std::map<std::string, int64_t> memo;
  uint64_t steps = 0;

  std::function<int64_t(const ProverMemory&)> build = [&](const ProverMemory& m) -> int64_t {
    if (++steps > step_cap) throw std::runtime_error("prover compiler: step budget exceeded");
    auto key = memory_key(m);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    out.max_vars_held = std::max(out.max_vars_held, (int)m.assignment.size());
    ProverAction act = strategy.next(m);
    Clause c = m.falsified_clause();
    ResolutionNode node;
    switch (act.kind) {
      case ProverAction::Kind::Query: {
        int64_t lo = build(strategy.after_query(m, act.var, false));
        int64_t hi = build(strategy.after_query(m, act.var, true));
        node = ResolutionNode::resolution(c, lo, hi, act.var);
        break;
      }
      case ProverAction::Kind::Forget: {
        int64_t next = build(strategy.after_forget(m, act.var));
        node = ResolutionNode::weakening(c, next);
        break;
      }
      case ProverAction::Kind::Output: {
        node = ResolutionNode::weakening(c, act.axiom - (int64_t)f.clauses.size());
        break;
      }
      case ProverAction::Kind::Stuck:
        throw std::runtime_error("prover compiler: strategy is stuck");
    }
    int64_t idx = (int64_t)out.nodes.size();
    out.nodes.push_back(std::move(node));
    memo[key] = idx;
    return idx;
  };

  build(strategy.initial());
  return out;
}

RefutationInstance CompiledProof::instance(const Cnf& f) const {
  RefutationInstance inst;
  inst.cnf = f;
  inst.nodes = BlockOracle<ResolutionNode>::materialized(nodes);
  return inst;
}

int PlsFormulation::depth() const {
  int d = 0;
  for (const auto& t : succ) d = std::max(d, t.depth());
  for (const auto& t : label) d = std::max(d, t.depth());
  return d;
}

namespace {

// Register layout: (v, phase, r3, r4, pos).
// phase 0 walk at v, r3 = previous+1, pos = raw position in succ[v];
// phase 1 forget, r3 = jump target, pos = slots - |assignment|;
// phase 2 label, r4 = chosen solution, pos = raw position in label[r4].
enum : int { RV = 0, RPHASE = 1, R3 = 2, R4 = 3, RPOS = 4 };

struct WalkStrategy : ProverStrategy {
  PlsFormulation form;
  Cnf f;
  int slots;

  WalkStrategy(PlsFormulation fo, Cnf f) : form(std::move(fo)), f(std::move(f)) {
    slots = 3 * std::max(1, form.depth());
    for (const auto& t : form.succ)
      for (const auto& n : t.nodes)
        if (n.is_leaf && (n.leaf < 0 || (uint64_t)n.leaf >= form.M))
          throw std::invalid_argument("formulation: successor leaf out of range");
    for (const auto& t : form.label)
      for (const auto& n : t.nodes)
        if (n.is_leaf && (n.leaf < 0 || n.leaf >= (int64_t)this->f.clauses.size()))
          throw std::invalid_argument("formulation: label leaf out of range");
    if (form.succ.size() != form.M || form.label.size() != form.M)
      throw std::invalid_argument("formulation: need M trees on both sides");
  }

  int var_budget() const override { return slots; }

  // walk the tree from a raw position through assigned variables
  static int advance_tree(const DTree& t, int pos, const std::map<int, bool>& asg) {
    while (!t.nodes[pos].is_leaf) {
      auto it = asg.find(t.nodes[pos].var);
      if (it == asg.end()) break;
      pos = it->second ? t.nodes[pos].hi : t.nodes[pos].lo;
    }
    return pos;
  }

  // variables on the full evaluation path of a tree (requires them assigned)
  static std::vector<int> path_vars(const DTree& t, const std::map<int, bool>& asg) {
    std::vector<int> out;
    int pos = 0;
    while (!t.nodes[pos].is_leaf) {
      int x = t.nodes[pos].var;
      auto it = asg.find(x);
      if (it == asg.end()) break;  // partial path
      out.push_back(x);
      pos = it->second ? t.nodes[pos].hi : t.nodes[pos].lo;
    }
    return out;
  }

  // perform every silent transition; stops at states that demand an action
  ProverMemory canonical(ProverMemory m) const {
    for (int guard = 0; guard < 1 << 20; ++guard) {
      uint64_t v = m.regs[RV], phase = m.regs[RPHASE];
      if (phase == 0) {
        const DTree& t = form.succ[v];
        int pos = advance_tree(t, (int)m.regs[RPOS], m.assignment);
        m.regs[RPOS] = (uint64_t)pos;
        if (!t.nodes[pos].is_leaf) return m;  // query pending
        uint64_t w = (uint64_t)t.nodes[pos].leaf;
        if (w > v) {
          m.regs[RPHASE] = 1;
          m.regs[R3] = w;
          m.regs[RPOS] = (uint64_t)(slots - (int)m.assignment.size());
          continue;
        }
        // solution found: w < v names v; w == v names the previous node
        uint64_t o = w < v ? v : (m.regs[R3] > 0 ? m.regs[R3] - 1 : v);
        m.regs[RPHASE] = 2;
        m.regs[R4] = o;
        m.regs[RPOS] = 0;
        continue;
      }
      if (phase == 1) {
        auto keep = path_vars(form.succ[v], m.assignment);
        bool extra = false;
        for (auto& [x, b] : m.assignment)
          if (std::find(keep.begin(), keep.end(), x) == keep.end()) extra = true;
        if (extra) return m;  // forget pending
        uint64_t w = m.regs[R3];
        m.regs[RV] = w;
        m.regs[RPHASE] = 0;
        m.regs[R3] = v + 1;
        m.regs[R4] = 0;
        m.regs[RPOS] = 0;
        continue;
      }
      // phase 2: advance the label tree
      const DTree& t = form.label[m.regs[R4]];
      int pos = advance_tree(t, (int)m.regs[RPOS], m.assignment);
      m.regs[RPOS] = (uint64_t)pos;
      return m;
    }
    throw std::runtime_error("formulation walk does not settle");
  }

  ProverMemory initial() const override {
    ProverMemory m;
    m.regs.assign(5, 0);
    return canonical(std::move(m));
  }

  ProverAction next(const ProverMemory& m0) const override {
    ProverMemory m = canonical(m0);
    ProverAction a;
    uint64_t phase = m.regs[RPHASE];
    if (phase == 0) {
      const DTree& t = form.succ[m.regs[RV]];
      a.kind = ProverAction::Kind::Query;
      a.var = t.nodes[m.regs[RPOS]].var;
      return a;
    }
    if (phase == 1) {
      auto keep = path_vars(form.succ[m.regs[RV]], m.assignment);
      for (auto& [x, b] : m.assignment)
        if (std::find(keep.begin(), keep.end(), x) == keep.end()) {
          a.kind = ProverAction::Kind::Forget;
          a.var = x;
          return a;
        }
      a.kind = ProverAction::Kind::Stuck;
      return a;
    }
    const DTree& t = form.label[m.regs[R4]];
    const auto& node = t.nodes[m.regs[RPOS]];
    if (!node.is_leaf) {
      a.kind = ProverAction::Kind::Query;
      a.var = node.var;
      return a;
    }
    a.kind = ProverAction::Kind::Output;
    a.axiom = node.leaf;
    return a;
  }

  ProverMemory after_query(const ProverMemory& m0, int var, bool value) const override {
    ProverMemory m = canonical(m0);
    m.assignment[var] = value;
    // descend past the answered query
    const DTree& t = m.regs[RPHASE] == 2 ? form.label[m.regs[R4]] : form.succ[m.regs[RV]];
    const auto& node = t.nodes[m.regs[RPOS]];
    if (!node.is_leaf && node.var == var) m.regs[RPOS] = value ? node.hi : node.lo;
    return canonical(std::move(m));
  }

  ProverMemory after_forget(const ProverMemory& m0, int var) const override {
    ProverMemory m = canonical(m0);
    m.assignment.erase(var);
    if (m.regs[RPHASE] == 1) m.regs[RPOS] = (uint64_t)(slots - (int)m.assignment.size());
    return canonical(std::move(m));
  }
};

}  // namespace

std::shared_ptr<ProverStrategy> pls_to_prover(const PlsFormulation& formulation, const Cnf& f) {
  return std::make_shared<WalkStrategy>(formulation, f);
}

GameCheck exhaustive_game_check(const ProverStrategy& strategy, const Cnf& f,
                                uint64_t step_cap) {
  GameCheck out;
  out.wins = true;
  uint64_t steps = 0;
  std::function<void(const ProverMemory&)> play = [&](const ProverMemory& m) {
    if (!out.wins) return;
    if (++steps > step_cap) {
      out.wins = false;
      return;
    }
    out.max_vars_held = std::max(out.max_vars_held, (int)m.assignment.size());
    ProverAction act = strategy.next(m);
    switch (act.kind) {
      case ProverAction::Kind::Query:
        play(strategy.after_query(m, act.var, false));
        play(strategy.after_query(m, act.var, true));
        return;
      case ProverAction::Kind::Forget:
        play(strategy.after_forget(m, act.var));
        return;
      case ProverAction::Kind::Output: {
        ++out.plays;
        // the named axiom must be falsified by the memory
        Clause c = m.falsified_clause();
        if (act.axiom < 0 || act.axiom >= (int64_t)f.clauses.size() ||
            !f.clauses[(size_t)act.axiom].subset_of(c))
          out.wins = false;
        return;
      }
      case ProverAction::Kind::Stuck:
        out.wins = false;
        return;
    }
  };
  play(strategy.initial());
  return out;
}

Cnf search_cnf(const std::vector<DTree>& verifier_trees, int nvars) {
  Cnf f;
  f.nvars = nvars;
  for (const auto& t : verifier_trees) {
    for (const auto& path : t.paths()) {
      if (path.leaf == 0) continue;  // rejecting leaf
      Clause c;
      for (auto [var, val] : path.fixed) c.lits.push_back(val ? -var : var);
      f.clauses.push_back(Clause(c.lits));
    }
  }
  return f;
}

MemoryCodec::MemoryCodec(const PlsFormulation& f, int nvars_in) {
  M = f.M;
  nvars = nvars_in;
  var_slots = 3 * std::max(1, f.depth());
  auto bits_for = [](uint64_t values) {
    int b = 1;
    while ((uint64_t(1) << b) < values) ++b;
    return b;
  };
  size_t max_tree = 1;
  for (const auto& t : f.succ) max_tree = std::max(max_tree, t.nodes.size());
  for (const auto& t : f.label) max_tree = std::max(max_tree, t.nodes.size());
  reg_bits[0] = bits_for(M);              // v
  reg_bits[1] = 2;                        // phase
  reg_bits[2] = bits_for(M + 1);          // r3
  reg_bits[3] = bits_for(M);              // r4
  reg_bits[4] = bits_for((uint64_t)std::max(max_tree, (size_t)var_slots + 1));  // pos
  slot_bits = bits_for((uint64_t)nvars + 1) + 1;
  total_bits = reg_bits[0] + reg_bits[1] + reg_bits[2] + reg_bits[3] + reg_bits[4] +
               var_slots * slot_bits;
  if (total_bits > 62) throw std::invalid_argument("memory encoding exceeds 62 bits");
}

uint64_t MemoryCodec::encode(const ProverMemory& m) const {
  uint64_t code = 0;
  for (int r = 0; r < 5; ++r) {
    code = (code << reg_bits[r]) | m.regs[r];
  }
  int used = 0;
  for (auto [v, b] : m.assignment) {
    code = (code << slot_bits) | ((uint64_t)v << 1 | (b ? 1 : 0));
    ++used;
  }
  for (; used < var_slots; ++used) code <<= slot_bits;
  return code;
}

std::optional<ProverMemory> MemoryCodec::decode(uint64_t code) const {
  ProverMemory m;
  m.regs.assign(5, 0);
  int shift = total_bits;
  for (int r = 0; r < 5; ++r) {
    shift -= reg_bits[r];
    m.regs[r] = (code >> shift) & ((uint64_t(1) << reg_bits[r]) - 1);
  }
  int prev = 0;
  bool ended = false;
  for (int s = 0; s < var_slots; ++s) {
    shift -= slot_bits;
    uint64_t slot = (code >> shift) & ((uint64_t(1) << slot_bits) - 1);
    int v = (int)(slot >> 1);
    if (v == 0) {
      if (slot & 1) return std::nullopt;  // value bit without a variable
      ended = true;
      continue;
    }
    if (ended) return std::nullopt;  // gap in the slot list
    if (v <= prev || v > nvars) return std::nullopt;  // unsorted or out of range
    m.assignment[v] = slot & 1;
    prev = v;
  }
  return m;
}

bool MemoryCodec::is_valid_encoding(uint64_t code, const PlsFormulation& f) const {
  auto m = decode(code);
  if (!m) return false;
  uint64_t v = m->regs[0], phase = m->regs[1], r3 = m->regs[2], r4 = m->regs[3],
           pos = m->regs[4];
  if (v >= M || phase > 2) return false;
  if (phase == 0 || phase == 2) {
    if (r3 > M) return false;  // previous-node register
    // the previous node's successor tree must point at v
    if (r3 > 0) {
      const DTree& tu = f.succ[r3 - 1];
      int at = WalkStrategy::advance_tree(tu, 0, m->assignment);
      if (!tu.nodes[at].is_leaf || (uint64_t)tu.nodes[at].leaf != v) return false;
    }
  }
  if (phase == 0) {
    const DTree& t = f.succ[v];
    if (pos >= t.nodes.size()) return false;
    // the claimed position must be reachable under the assignment
    int at = t.root;
    while (!t.nodes[at].is_leaf && (uint64_t)at != pos) {
      auto it = m->assignment.find(t.nodes[at].var);
      if (it == m->assignment.end()) return false;
      at = it->second ? t.nodes[at].hi : t.nodes[at].lo;
    }
    return (uint64_t)at == pos;
  }
  if (phase == 1) {
    if (r3 >= M || r3 <= v) return false;  // jump target must move upward
    const DTree& t = f.succ[v];
    int at = WalkStrategy::advance_tree(t, 0, m->assignment);
    if (!t.nodes[at].is_leaf || (uint64_t)t.nodes[at].leaf != r3) return false;
    return pos == (uint64_t)(var_slots - (int)m->assignment.size());
  }
  // phase 2: r4 names the chosen solution; its label tree position must be
  // reachable
  if (r4 >= M) return false;
  const DTree& t = f.label[r4];
  if (pos >= t.nodes.size()) return false;
  int at = t.root;
  while (!t.nodes[at].is_leaf && (uint64_t)at != pos) {
    auto it = m->assignment.find(t.nodes[at].var);
    if (it == m->assignment.end()) return false;
    at = it->second ? t.nodes[at].hi : t.nodes[at].lo;
  }
  return (uint64_t)at == pos;
}

}  // namespace rfl
