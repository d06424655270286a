#include "refuterlab/resolution.hpp"

#include <stdexcept>
#include <unordered_set>

namespace rfl {

std::string reason_str(InvalidReason r) {
  switch (r) {
    case InvalidReason::None: return "valid";
    case InvalidReason::PredOutOfRange: return "pred-out-of-range";
    case InvalidReason::ForwardReference: return "forward-reference";
    case InvalidReason::PivotMissing: return "pivot-missing";
    case InvalidReason::WrongResolvent: return "wrong-resolvent";
    case InvalidReason::NotASuperset: return "not-a-superset";
    case InvalidReason::LastNotEmpty: return "last-not-empty";
    case InvalidReason::WidthCapExceeded: return "width-cap-exceeded";
  }
  return "?";
}

Verdict check_node(const RefutationInstance& inst, int64_t i) {
  if (i < 0 || (uint64_t)i >= inst.nodes.length) throw std::out_of_range("node index");
  ResolutionNode node = inst.nodes.fetch((uint64_t)i);
  const int64_t m = inst.num_axioms();

  if (inst.width_cap && node.clause.width() > *inst.width_cap - 1)
    return Verdict::bad(InvalidReason::WidthCapExceeded);

  auto pred_ok = [&](int64_t p) { return p >= -m && p < i; };

  if (node.tag == NodeTag::Resolution) {
    if (!pred_ok(node.pred1) || !pred_ok(node.pred2))
      return Verdict::bad(node.pred1 >= i || node.pred2 >= i ? InvalidReason::ForwardReference
                                                             : InvalidReason::PredOutOfRange);
    Clause c1 = inst.clause_at(node.pred1);
    Clause c2 = inst.clause_at(node.pred2);
    int a = node.pivot;
    if (a < 1 || !c1.has(a) || !c2.has(-a)) return Verdict::bad(InvalidReason::PivotMissing);
    Clause resolvent = clause_union(c1.without(a), c2.without(-a));
    if (!(resolvent == node.clause)) return Verdict::bad(InvalidReason::WrongResolvent);
  } else {
    if (!pred_ok(node.pred1))
      return Verdict::bad(node.pred1 >= i ? InvalidReason::ForwardReference
                                          : InvalidReason::PredOutOfRange);
    Clause c1 = inst.clause_at(node.pred1);
    if (!c1.subset_of(node.clause)) return Verdict::bad(InvalidReason::NotASuperset);
  }

  if ((uint64_t)i + 1 == inst.nodes.length && !node.clause.empty())
    return Verdict::bad(InvalidReason::LastNotEmpty);
  return Verdict::ok();
}

std::optional<int64_t> verify_refutation(const RefutationInstance& inst) {
  if (inst.nodes.length == 0) return 0;  // no empty clause at all
  for (uint64_t i = 0; i < inst.nodes.length; ++i)
    if (!check_node(inst, (int64_t)i).valid) return (int64_t)i;
  return std::nullopt;
}

std::vector<int64_t> scan_invalid(const RefutationInstance& inst) {
  std::vector<int64_t> out;
  for (uint64_t i = 0; i < inst.nodes.length; ++i)
    if (!check_node(inst, (int64_t)i).valid) out.push_back((int64_t)i);
  return out;
}

namespace {

// Bitmask clause over <= 32 variables: low half positive, high half negative.
using MaskClause = uint64_t;

MaskClause to_mask(const Clause& c) {
  MaskClause m = 0;
  for (Lit l : c.lits) {
    int v = var_of(l) - 1;
    m |= uint64_t(1) << (positive(l) ? v : 32 + v);
  }
  return m;
}

int mask_width(MaskClause m) { return __builtin_popcountll(m); }

}  // namespace

bool width_derivable(const Cnf& f, const Clause& c, int w0, int var_cap) {
  if (var_cap > 31) throw std::invalid_argument("width_derivable: variable cap too large");
  if (f.nvars > var_cap) throw std::runtime_error("width_derivable: instance too large");
  for (Lit l : c.lits)
    if (var_of(l) > var_cap) throw std::runtime_error("width_derivable: clause variable too large");
  if (w0 <= 0) throw std::invalid_argument("width_derivable: bound must be positive");
  if (c.width() >= w0) return false;

  // axioms wider than the bound cannot appear in a width-bounded derivation
  // and simply fall out of the closure
  std::unordered_set<MaskClause> closed;
  std::vector<MaskClause> queue;
  auto add = [&](MaskClause m) {
    if (mask_width(m) < w0 && closed.insert(m).second) queue.push_back(m);
  };
  for (const auto& ax : f.clauses) add(to_mask(ax));

  std::vector<MaskClause> all;
  while (!queue.empty()) {
    MaskClause cur = queue.back();
    queue.pop_back();
    all.assign(closed.begin(), closed.end());
    for (MaskClause other : all) {
      // resolve cur with other on every clashing variable
      uint32_t clash1 = (uint32_t)(cur & (other >> 32));          // +v in cur, -v in other
      uint32_t clash2 = (uint32_t)((cur >> 32) & other);          // -v in cur, +v in other
      for (uint32_t bits = clash1; bits; bits &= bits - 1) {
        int v = __builtin_ctz(bits);
        MaskClause res = (cur & ~(uint64_t(1) << v)) | (other & ~(uint64_t(1) << (32 + v)));
        add(res);
      }
      for (uint32_t bits = clash2; bits; bits &= bits - 1) {
        int v = __builtin_ctz(bits);
        MaskClause res = (cur & ~(uint64_t(1) << (32 + v))) | (other & ~(uint64_t(1) << v));
        add(res);
      }
    }
  }

  MaskClause target = to_mask(c);
  for (MaskClause d : closed)
    if ((d & ~target) == 0) return true;  // weakening of a derived clause
  return false;
}

}  // namespace rfl
