#include "refuterlab/lb_cnf.hpp"

#include <functional>
#include <stdexcept>

namespace rfl {

namespace {

int bits_for(uint64_t values) {
  int b = 1;
  while ((uint64_t(1) << b) < values) ++b;
  return b;
}

// literals asserting X != value, bit layout little-endian over vars
void add_not_equal(Clause& c, const std::function<int(int)>& var_at, int bits, uint64_t value) {
  for (int b = 0; b < bits; ++b) {
    int v = var_at(b);
    c.lits.push_back(((value >> b) & 1) ? -v : v);
  }
}

}  // namespace

WlbLayout::WlbLayout(const Cnf& f, int w0, int L) : L(L), m(f.nclauses()), nvars(f.nvars) {
  if (w0 < 2) throw std::invalid_argument("wlb layout: w0 must be at least 2");
  slots = w0 - 1;
  slot_bits = bits_for((uint64_t)2 * nvars + 1);
  pred_bits = bits_for((uint64_t)m + L);
  pivot_bits = bits_for((uint64_t)nvars + 1);
  group_bits = slots * slot_bits + 1 + 2 * pred_bits + pivot_bits;
}

std::vector<bool> WlbLayout::encode_proof(const std::vector<ResolutionNode>& nodes) const {
  if ((int)nodes.size() != L) throw std::invalid_argument("encode_proof: length mismatch");
  std::vector<bool> a(total_vars(), false);
  auto put = [&](int var, uint64_t value, int bits) {
    for (int b = 0; b < bits; ++b) a[var + b - 1] = (value >> b) & 1;
  };
  for (int i = 0; i < L; ++i) {
    const auto& node = nodes[i];
    if (node.clause.width() > slots)
      throw std::invalid_argument("encode_proof: clause exceeds the literal slots");
    for (int s = 0; s < slots; ++s) {
      uint64_t v = s < node.clause.width() ? (uint64_t)encode_lit(node.clause.lits[s]) : 0;
      put(slot_var(i, s, 0), v, slot_bits);
    }
    put(tag_var(i), node.tag == NodeTag::Weakening ? 1 : 0, 1);
    put(p1_var(i, 0), (uint64_t)(node.pred1 + m), pred_bits);
    put(p2_var(i, 0), node.tag == NodeTag::Resolution ? (uint64_t)(node.pred2 + m) : 0,
        pred_bits);
    put(pivot_var(i, 0), node.tag == NodeTag::Resolution ? (uint64_t)node.pivot : 0, pivot_bits);
  }
  return a;
}

ResolutionNode WlbLayout::decode_node(const std::vector<bool>& assignment, int node) const {
  auto get = [&](int var, int bits) {
    uint64_t v = 0;
    for (int b = 0; b < bits; ++b)
      if (assignment[var + b - 1]) v |= uint64_t(1) << b;
    return v;
  };
  ResolutionNode n;
  Clause c;
  for (int s = 0; s < slots; ++s) {
    uint64_t v = get(slot_var(node, s, 0), slot_bits);
    if (v != 0 && v <= (uint64_t)max_slot_value()) c.lits.push_back(decode_lit((int)v));
  }
  n.clause = Clause(c.lits);
  n.tag = get(tag_var(node), 1) ? NodeTag::Weakening : NodeTag::Resolution;
  n.pred1 = (int64_t)get(p1_var(node, 0), pred_bits) - m;
  n.pred2 = (int64_t)get(p2_var(node, 0), pred_bits) - m;
  n.pivot = (int)get(pivot_var(node, 0), pivot_bits);
  return n;
}

int64_t WlbCnf::lookup(const std::string& key) const {
  auto it = clause_key.find(key);
  if (it == clause_key.end()) throw std::runtime_error("wlb constraint not found: " + key);
  return it->second;
}

WlbCnf build_wlb_cnf(const Cnf& f, int w0, int L) {
  for (const auto& ax : f.clauses)
    if (ax.empty()) throw std::invalid_argument("wlb: empty axiom");
  WlbLayout lay(f, w0, L);
  if (lay.slots != 1)
    throw std::invalid_argument(
        "wlb: constraint generation is implemented for w0 = 2 (one literal slot)");
  WlbCnf out{Cnf{}, lay, {}};
  out.cnf.nvars = lay.total_vars();
  const int m = lay.m;

  auto emit = [&](Clause c, const std::string& key) {
    out.clause_key[key] = (int64_t)out.cnf.clauses.size();
    out.cnf.clauses.push_back(Clause(c.lits));
  };
  auto k2 = [](const std::string& a, int64_t x) { return a + " " + std::to_string(x); };

  for (int i = 0; i < L; ++i) {
    const std::string ni = std::to_string(i);
    // junk slot values
    for (uint64_t v = (uint64_t)lay.max_slot_value() + 1; v < (uint64_t(1) << lay.slot_bits);
         ++v) {
      Clause c;
      add_not_equal(c, [&](int b) { return lay.slot_var(i, 0, b); }, lay.slot_bits, v);
      emit(std::move(c), k2("jslot " + ni, (int64_t)v));
    }
    // the final node carries the empty clause
    if (i == L - 1) {
      for (int b = 0; b < lay.slot_bits; ++b) {
        Clause c;
        c.lits.push_back(-lay.slot_var(i, 0, b));
        emit(std::move(c), k2("last", b));
      }
    }
    // predecessor and pivot ranges
    for (uint64_t v = (uint64_t)(m + i); v < (uint64_t(1) << lay.pred_bits); ++v) {
      Clause c;
      add_not_equal(c, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits, v);
      emit(std::move(c), k2("jp1 " + ni, (int64_t)v));
      Clause c2;
      c2.lits.push_back(lay.tag_var(i));  // only resolutions constrain p2
      add_not_equal(c2, [&](int b) { return lay.p2_var(i, b); }, lay.pred_bits, v);
      emit(std::move(c2), k2("jp2 " + ni, (int64_t)v));
    }
    for (uint64_t a = 0; a < (uint64_t(1) << lay.pivot_bits); ++a) {
      if (a >= 1 && a <= (uint64_t)lay.nvars) continue;
      Clause c;
      c.lits.push_back(lay.tag_var(i));
      add_not_equal(c, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits, a);
      emit(std::move(c), k2("jpiv " + ni, (int64_t)a));
    }
    // resolutions have empty clauses in the one-slot regime
    for (int b = 0; b < lay.slot_bits; ++b) {
      Clause c;
      c.lits.push_back(lay.tag_var(i));
      c.lits.push_back(-lay.slot_var(i, 0, b));
      emit(std::move(c), k2("resempty " + ni, b));
    }
    // per-predecessor structure
    for (int jv = 0; jv < m + i; ++jv) {
      int64_t j = jv - m;
      const std::string nij = ni + " " + std::to_string(jv);
      for (int a = 1; a <= lay.nvars; ++a) {
        // the positive pivot must sit in the first predecessor
        if (j < 0) {
          if (!f.clauses[(size_t)(j + m)].has(a)) {
            Clause c;
            c.lits.push_back(lay.tag_var(i));
            add_not_equal(c, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits, (uint64_t)jv);
            add_not_equal(c, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits,
                          (uint64_t)a);
            emit(std::move(c), k2("resp1 " + nij, a));
          }
        } else {
          uint64_t want = (uint64_t)WlbLayout::encode_lit(a);
          for (uint64_t s = 0; s <= (uint64_t)lay.max_slot_value(); ++s) {
            if (s == want) continue;
            Clause c;
            c.lits.push_back(lay.tag_var(i));
            add_not_equal(c, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits, (uint64_t)jv);
            add_not_equal(c, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits,
                          (uint64_t)a);
            add_not_equal(c, [&](int b) { return lay.slot_var((int)j, 0, b); }, lay.slot_bits, s);
            emit(std::move(c), k2("resp1 " + nij + " " + std::to_string(a), (int64_t)s));
          }
        }
        // and the negative pivot in the second
        if (j < 0) {
          if (!f.clauses[(size_t)(j + m)].has(-a)) {
            Clause c;
            c.lits.push_back(lay.tag_var(i));
            add_not_equal(c, [&](int b) { return lay.p2_var(i, b); }, lay.pred_bits, (uint64_t)jv);
            add_not_equal(c, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits,
                          (uint64_t)a);
            emit(std::move(c), k2("resp2 " + nij, a));
          }
        } else {
          uint64_t want = (uint64_t)WlbLayout::encode_lit(-a);
          for (uint64_t s = 0; s <= (uint64_t)lay.max_slot_value(); ++s) {
            if (s == want) continue;
            Clause c;
            c.lits.push_back(lay.tag_var(i));
            add_not_equal(c, [&](int b) { return lay.p2_var(i, b); }, lay.pred_bits, (uint64_t)jv);
            add_not_equal(c, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits,
                          (uint64_t)a);
            add_not_equal(c, [&](int b) { return lay.slot_var((int)j, 0, b); }, lay.slot_bits, s);
            emit(std::move(c), k2("resp2 " + nij + " " + std::to_string(a), (int64_t)s));
          }
        }
      }
      // weakenings: the predecessor clause must fit inside the node's slot
      if (j < 0) {
        const Clause& ax = f.clauses[(size_t)(j + m)];
        if (ax.width() >= 2) {
          Clause c;
          c.lits.push_back(-lay.tag_var(i));
          add_not_equal(c, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits, (uint64_t)jv);
          emit(std::move(c), "wkax " + nij);
        } else {
          uint64_t want = (uint64_t)WlbLayout::encode_lit(ax.lits[0]);
          for (int b = 0; b < lay.slot_bits; ++b) {
            Clause c;
            c.lits.push_back(-lay.tag_var(i));
            add_not_equal(c, [&](int bb) { return lay.p1_var(i, bb); }, lay.pred_bits,
                          (uint64_t)jv);
            int sv = lay.slot_var(i, 0, b);
            c.lits.push_back(((want >> b) & 1) ? sv : -sv);
            emit(std::move(c), k2("wkax " + nij, b));
          }
        }
      } else {
        for (uint64_t s = 1; s <= (uint64_t)lay.max_slot_value(); ++s) {
          for (int b = 0; b < lay.slot_bits; ++b) {
            Clause c;
            c.lits.push_back(-lay.tag_var(i));
            add_not_equal(c, [&](int bb) { return lay.p1_var(i, bb); }, lay.pred_bits,
                          (uint64_t)jv);
            add_not_equal(c, [&](int bb) { return lay.slot_var((int)j, 0, bb); }, lay.slot_bits,
                          s);
            int sv = lay.slot_var(i, 0, b);
            c.lits.push_back(((s >> b) & 1) ? sv : -sv);
            emit(std::move(c), k2("wk " + nij + " " + std::to_string((int64_t)s), b));
          }
        }
      }
    }
  }
  return out;
}

SlbLayout::SlbLayout(const Cnf& f, int L) : L(L), m(f.nclauses()), nvars(f.nvars) {
  pred_bits = bits_for((uint64_t)m + L);
  pivot_bits = bits_for((uint64_t)nvars + 1);
  group_bits = 2 * nvars + 1 + 2 * pred_bits + pivot_bits;
}

std::vector<bool> SlbLayout::encode_proof(const std::vector<ResolutionNode>& nodes) const {
  if ((int)nodes.size() != L) throw std::invalid_argument("encode_proof: length mismatch");
  std::vector<bool> a(total_vars(), false);
  auto put = [&](int var, uint64_t value, int bits) {
    for (int b = 0; b < bits; ++b) a[var + b - 1] = (value >> b) & 1;
  };
  for (int i = 0; i < L; ++i) {
    const auto& node = nodes[i];
    for (Lit l : node.clause.lits) a[occ_var(i, l) - 1] = true;
    put(tag_var(i), node.tag == NodeTag::Weakening ? 1 : 0, 1);
    put(p1_var(i, 0), (uint64_t)(node.pred1 + m), pred_bits);
    put(p2_var(i, 0), node.tag == NodeTag::Resolution ? (uint64_t)(node.pred2 + m) : 0,
        pred_bits);
    put(pivot_var(i, 0), node.tag == NodeTag::Resolution ? (uint64_t)node.pivot : 0, pivot_bits);
  }
  return a;
}

SlbCnf build_slb_cnf(const Cnf& f, int L) {
  SlbLayout lay(f, L);
  SlbCnf out{Cnf{}, lay};
  out.cnf.nvars = lay.total_vars();
  const int m = lay.m;
  const int nv = lay.nvars;

  auto all_lits = [&]() {
    std::vector<Lit> ls;
    for (int v = 1; v <= nv; ++v) {
      ls.push_back(v);
      ls.push_back(-v);
    }
    return ls;
  }();

  auto push = [&](Clause c) { out.cnf.clauses.push_back(Clause(c.lits)); };

  for (int i = 0; i < L; ++i) {
    if (i == L - 1)
      for (Lit l : all_lits) push(make_clause({-lay.occ_var(i, l)}));
    for (uint64_t v = (uint64_t)(m + i); v < (uint64_t(1) << lay.pred_bits); ++v) {
      Clause c1;
      add_not_equal(c1, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits, v);
      push(std::move(c1));
      Clause c2;
      c2.lits.push_back(lay.tag_var(i));
      add_not_equal(c2, [&](int b) { return lay.p2_var(i, b); }, lay.pred_bits, v);
      push(std::move(c2));
    }
    for (uint64_t a = 0; a < (uint64_t(1) << lay.pivot_bits); ++a) {
      if (a >= 1 && a <= (uint64_t)nv) continue;
      Clause c;
      c.lits.push_back(lay.tag_var(i));
      add_not_equal(c, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits, a);
      push(std::move(c));
    }

    for (int jv = 0; jv < m + i; ++jv) {
      int64_t j = jv - m;
      auto occ_pred = [&](Lit l) -> std::optional<bool> {
        if (j < 0) return f.clauses[(size_t)(j + m)].has(l);
        return std::nullopt;  // variable occ_var(j, l)
      };
      // weakening: pred clause contained in the node clause
      for (Lit l : all_lits) {
        Clause c;
        c.lits.push_back(-lay.tag_var(i));
        add_not_equal(c, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits, (uint64_t)jv);
        auto known = occ_pred(l);
        if (known.has_value()) {
          if (!*known) continue;  // absent literal imposes nothing
        } else {
          c.lits.push_back(-lay.occ_var((int)j, l));
        }
        c.lits.push_back(lay.occ_var(i, l));
        push(std::move(c));
      }
      // resolution against every second predecessor and pivot
      for (int kv = 0; kv < m + i; ++kv) {
        int64_t kk = kv - m;
        auto occ_pred2 = [&](Lit l) -> std::optional<bool> {
          if (kk < 0) return f.clauses[(size_t)(kk + m)].has(l);
          return std::nullopt;
        };
        for (int a = 1; a <= nv; ++a) {
          Clause cond;
          cond.lits.push_back(lay.tag_var(i));
          add_not_equal(cond, [&](int b) { return lay.p1_var(i, b); }, lay.pred_bits,
                        (uint64_t)jv);
          add_not_equal(cond, [&](int b) { return lay.p2_var(i, b); }, lay.pred_bits,
                        (uint64_t)kv);
          add_not_equal(cond, [&](int b) { return lay.pivot_var(i, b); }, lay.pivot_bits,
                        (uint64_t)a);
          auto with_cond = [&](std::initializer_list<Lit> extra,
                               std::initializer_list<std::optional<bool>> knowns) {
            // skip the clause when a folded constant already satisfies it
            Clause c = cond;
            auto kit = knowns.begin();
            for (Lit e : extra) {
              if (kit != knowns.end() && kit->has_value()) {
                bool want_true = e > 0;
                if (**kit == want_true) return;  // satisfied constant
                ++kit;
                continue;
              }
              if (kit != knowns.end()) ++kit;
              c.lits.push_back(e);
            }
            push(std::move(c));
          };
          (void)with_cond;
          // pivot occurs positively in pred1, negatively in pred2
          {
            Clause c = cond;
            auto known = occ_pred(a);
            if (known.has_value()) {
              if (!*known) push(std::move(c));
            } else {
              c.lits.push_back(lay.occ_var((int)j, a));
              push(std::move(c));
            }
          }
          {
            Clause c = cond;
            auto known = occ_pred2(-a);
            if (known.has_value()) {
              if (!*known) push(std::move(c));
            } else {
              c.lits.push_back(lay.occ_var((int)kk, -a));
              push(std::move(c));
            }
          }
          // membership algebra per literal
          for (Lit l : all_lits) {
            auto in_j = occ_pred(l);
            auto in_k = occ_pred2(l);
            bool from_j = l != a;        // +a is removed from pred1
            bool from_k = l != -a;       // -a is removed from pred2
            // occ_i(l) -> allowed sources
            {
              Clause c = cond;
              c.lits.push_back(-lay.occ_var(i, l));
              bool satisfied = false;
              if (from_j) {
                if (in_j.has_value()) {
                  if (*in_j) satisfied = true;
                } else {
                  c.lits.push_back(lay.occ_var((int)j, l));
                }
              }
              if (from_k && !satisfied) {
                if (in_k.has_value()) {
                  if (*in_k) satisfied = true;
                } else {
                  c.lits.push_back(lay.occ_var((int)kk, l));
                }
              }
              if (!satisfied) push(std::move(c));
            }
            // sources -> occ_i(l)
            if (from_j) {
              Clause c = cond;
              if (in_j.has_value()) {
                if (!*in_j) goto skip_j;
              } else {
                c.lits.push_back(-lay.occ_var((int)j, l));
              }
              c.lits.push_back(lay.occ_var(i, l));
              push(std::move(c));
            }
          skip_j:
            if (from_k) {
              Clause c = cond;
              if (in_k.has_value()) {
                if (!*in_k) continue;
              } else {
                c.lits.push_back(-lay.occ_var((int)kk, l));
              }
              c.lits.push_back(lay.occ_var(i, l));
              push(std::move(c));
            }
          }
        }
      }
    }
  }
  return out;
}

// ---- the walking refuter over the wlb layout --------------------------------

namespace {

struct WlbStrategy : ProverStrategy {
  std::shared_ptr<WlbCnf> wlb;
  Cnf f;
  int w0;
  mutable std::map<std::vector<Lit>, bool> derivable_cache;

  WlbStrategy(std::shared_ptr<WlbCnf> w, Cnf f, int w0)
      : wlb(std::move(w)), f(std::move(f)), w0(w0) {}

  int var_budget() const override { return 3 * wlb->layout.group_bits; }

  bool derivable(const Clause& c) const {
    auto it = derivable_cache.find(c.lits);
    if (it != derivable_cache.end()) return it->second;
    bool r = width_derivable(f, c, w0);
    derivable_cache[c.lits] = r;
    return r;
  }

  ProverMemory initial() const override {
    ProverMemory m;
    m.regs = {(uint64_t)(wlb->layout.L - 1), 0};
    return m;
  }

  struct Analysis {
    enum class Kind : uint8_t { Query, Output, StepTo, Stuck } kind = Kind::Stuck;
    int var = 0;
    std::string key;
    int target = 0;
  };

  static Analysis want(int var) { return {Analysis::Kind::Query, var, "", 0}; }
  static Analysis flag(std::string key) { return {Analysis::Kind::Output, 0, std::move(key), 0}; }
  static Analysis step(int target) { return {Analysis::Kind::StepTo, 0, "", target}; }

  std::optional<uint64_t> read_group(const ProverMemory& m,
                                     const std::function<int(int)>& var_at, int bits,
                                     int* missing) const {
    uint64_t v = 0;
    for (int b = 0; b < bits; ++b) {
      auto it = m.assignment.find(var_at(b));
      if (it == m.assignment.end()) {
        *missing = var_at(b);
        return std::nullopt;
      }
      if (it->second) v |= uint64_t(1) << b;
    }
    return v;
  }

  bool in_slot_group(int node, int var) const {
    const WlbLayout& lay = wlb->layout;
    return var >= lay.slot_var(node, 0, 0) && var <= lay.slot_var(node, 0, lay.slot_bits - 1);
  }

  // the walk at a settled position: read the current node, flag the violated
  // constraint, or name the predecessor to move to
  Analysis analyze(const ProverMemory& m) const {
    const WlbLayout& lay = wlb->layout;
    const int cur = (int)m.regs[0];
    const std::string ni = std::to_string(cur);
    auto k2 = [](const std::string& a, int64_t x) { return a + " " + std::to_string(x); };

    int missing = 0;
    auto slot =
        read_group(m, [&](int b) { return lay.slot_var(cur, 0, b); }, lay.slot_bits, &missing);
    if (!slot) return want(missing);
    if (*slot > (uint64_t)lay.max_slot_value()) return flag(k2("jslot " + ni, (int64_t)*slot));
    if (cur == lay.L - 1 && *slot != 0) {
      for (int b = 0; b < lay.slot_bits; ++b)
        if ((*slot >> b) & 1) return flag(k2("last", b));
    }

    auto tag = read_group(m, [&](int b) { return lay.tag_var(cur) + b; }, 1, &missing);
    if (!tag) return want(missing);
    bool wk = *tag == 1;

    auto p1 = read_group(m, [&](int b) { return lay.p1_var(cur, b); }, lay.pred_bits, &missing);
    if (!p1) return want(missing);
    if (*p1 >= (uint64_t)(lay.m + cur)) return flag(k2("jp1 " + ni, (int64_t)*p1));
    int64_t j = (int64_t)*p1 - lay.m;
    const std::string nij = ni + " " + std::to_string((int64_t)*p1);

    if (wk) {
      if (j < 0) {
        const Clause& ax = f.clauses[(size_t)(j + lay.m)];
        if (ax.width() >= 2) return flag("wkax " + nij);
        uint64_t want_v = (uint64_t)WlbLayout::encode_lit(ax.lits[0]);
        if (*slot != want_v) {
          for (int b = 0; b < lay.slot_bits; ++b)
            if (((*slot ^ want_v) >> b) & 1) return flag(k2("wkax " + nij, b));
        }
        return {};  // valid weakening from an axiom: the invariant is broken
      }
      auto slot_j = read_group(m, [&](int b) { return lay.slot_var((int)j, 0, b); },
                               lay.slot_bits, &missing);
      if (!slot_j) return want(missing);
      if (*slot_j > (uint64_t)lay.max_slot_value())
        return flag(k2("jslot " + std::to_string(j), (int64_t)*slot_j));
      if (*slot_j != 0 && *slot_j != *slot) {
        for (int b = 0; b < lay.slot_bits; ++b)
          if (((*slot ^ *slot_j) >> b) & 1)
            return flag(k2("wk " + nij + " " + std::to_string((int64_t)*slot_j), b));
      }
      Clause c_j;
      if (*slot_j != 0) c_j = Clause({WlbLayout::decode_lit((int)*slot_j)});
      if (derivable(c_j)) return {};
      return step((int)j);
    }

    auto piv =
        read_group(m, [&](int b) { return lay.pivot_var(cur, b); }, lay.pivot_bits, &missing);
    if (!piv) return want(missing);
    if (*piv < 1 || *piv > (uint64_t)lay.nvars) return flag(k2("jpiv " + ni, (int64_t)*piv));
    int a_var = (int)*piv;
    auto p2 = read_group(m, [&](int b) { return lay.p2_var(cur, b); }, lay.pred_bits, &missing);
    if (!p2) return want(missing);
    if (*p2 >= (uint64_t)(lay.m + cur)) return flag(k2("jp2 " + ni, (int64_t)*p2));
    int64_t k = (int64_t)*p2 - lay.m;
    if (*slot != 0) {
      for (int b = 0; b < lay.slot_bits; ++b)
        if ((*slot >> b) & 1) return flag(k2("resempty " + ni, b));
    }
    if (j < 0) {
      if (!f.clauses[(size_t)(j + lay.m)].has(a_var)) return flag(k2("resp1 " + nij, a_var));
    } else {
      auto slot_j = read_group(m, [&](int b) { return lay.slot_var((int)j, 0, b); },
                               lay.slot_bits, &missing);
      if (!slot_j) return want(missing);
      uint64_t want_v = (uint64_t)WlbLayout::encode_lit(a_var);
      if (*slot_j != want_v)
        return flag(k2("resp1 " + nij + " " + std::to_string(a_var), (int64_t)*slot_j));
    }
    const std::string nik = ni + " " + std::to_string((int64_t)*p2);
    if (k < 0) {
      if (!f.clauses[(size_t)(k + lay.m)].has(-a_var)) return flag(k2("resp2 " + nik, a_var));
    } else {
      auto slot_k = read_group(m, [&](int b) { return lay.slot_var((int)k, 0, b); },
                               lay.slot_bits, &missing);
      if (!slot_k) return want(missing);
      uint64_t want_v = (uint64_t)WlbLayout::encode_lit(-a_var);
      if (*slot_k != want_v)
        return flag(k2("resp2 " + nik + " " + std::to_string(a_var), (int64_t)*slot_k));
    }
    if (j >= 0 && !derivable(Clause({a_var}))) return step((int)j);
    if (k >= 0 && !derivable(Clause({-a_var}))) return step((int)k);
    return {};  // both predecessors derive in small width: no true bound
  }

  // first variable to drop when moving: anything outside the target's slots
  std::optional<int> forget_candidate(const ProverMemory& m, int target) const {
    for (auto& [v, b] : m.assignment)
      if (!in_slot_group(target, v)) return v;
    return std::nullopt;
  }

  ProverAction next(const ProverMemory& m) const override {
    ProverAction a;
    if (m.regs[1] > 0) {
      auto v = forget_candidate(m, (int)(m.regs[1] - 1));
      if (v) {
        a.kind = ProverAction::Kind::Forget;
        a.var = *v;
        return a;
      }
      return a;  // stuck: after_forget should have settled the registers
    }
    Analysis an = analyze(m);
    switch (an.kind) {
      case Analysis::Kind::Query:
        a.kind = ProverAction::Kind::Query;
        a.var = an.var;
        return a;
      case Analysis::Kind::Output:
        a.kind = ProverAction::Kind::Output;
        a.axiom = wlb->lookup(an.key);
        return a;
      case Analysis::Kind::StepTo: {
        auto v = forget_candidate(m, an.target);
        if (!v) return a;
        a.kind = ProverAction::Kind::Forget;
        a.var = *v;
        return a;
      }
      case Analysis::Kind::Stuck:
        return a;
    }
    return a;
  }

  ProverMemory after_query(const ProverMemory& m, int var, bool value) const override {
    ProverMemory out = m;
    out.assignment[var] = value;
    return out;
  }

  ProverMemory after_forget(const ProverMemory& m, int var) const override {
    ProverMemory out = m;
    if (out.regs[1] == 0) {
      Analysis an = analyze(m);  // the decision is re-derivable before dropping bits
      if (an.kind == Analysis::Kind::StepTo) out.regs[1] = (uint64_t)an.target + 1;
    }
    out.assignment.erase(var);
    if (out.regs[1] > 0) {
      int target = (int)(out.regs[1] - 1);
      if (!forget_candidate(out, target)) {
        out.regs[0] = (uint64_t)target;
        out.regs[1] = 0;
      }
    }
    return out;
  }
};

}  // namespace

WlbRefutation refute_wlb_cnf(const Cnf& f, int w0, int L, uint64_t step_cap) {
  auto wlb = std::make_shared<WlbCnf>(build_wlb_cnf(f, w0, L));
  if (width_derivable(f, Clause(), w0))
    throw std::invalid_argument("refute_wlb: w0 is not a width lower bound for F");
  WlbStrategy strategy(wlb, f, w0);
  WlbRefutation out;
  out.node_bits = wlb->layout.group_bits;
  out.proof = prover_to_resolution(strategy, wlb->cnf, step_cap);
  return out;
}

}  // namespace rfl
