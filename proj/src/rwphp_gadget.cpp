#include "refuterlab/rwphp_gadget.hpp"

#include <memory>
#include <stdexcept>

namespace rfl {

namespace {

struct GadgetLayout {
  int n = 0;          // variables of F
  uint64_t M = 0;     // row budget
  uint64_t L_it = 0;  // inner instance length
  uint64_t s_F = 0;
  uint64_t padding = 0;
  std::vector<uint64_t> row_count;  // k[t], last-row width of layer t
  std::vector<bool> two_rows;      // layer t compresses through f
  std::vector<uint64_t> size;      // node count of layer t
  std::vector<uint64_t> offset;    // first index of layer t's block

  GadgetLayout(int n, uint64_t M, uint64_t L_it, uint64_t s_F)
      : n(n), M(M), L_it(L_it), s_F(s_F) {
    row_count.assign(n + 1, 0);
    two_rows.assign(n + 1, false);
    size.assign(n + 1, 0);
    offset.assign(n + 1, 0);
    row_count[0] = 1;
    size[0] = 1;
    for (int t = 1; t <= n; ++t) {
      if (2 * row_count[t - 1] <= M) {
        row_count[t] = 2 * row_count[t - 1];
        size[t] = row_count[t];
      } else {
        two_rows[t] = true;
        row_count[t] = M;
        size[t] = 2 * M * L_it + M;
      }
    }
    uint64_t core = 0;
    for (int t = 0; t <= n; ++t) core += size[t];
    if (s_F < core) throw std::invalid_argument("rwphp gadget: s_F below the core size");
    padding = s_F - core;
    uint64_t at = padding;
    for (int t = n; t >= 0; --t) {
      offset[t] = at;
      at += size[t];
    }
  }

  uint64_t core() const { return s_F - padding; }

  // index of row node E^t_i
  uint64_t row_index(int t, uint64_t i) const { return offset[t] + i; }
  // index of chain node D^t_{(y,a)}; heads (a = 0) sit last in the block
  uint64_t chain_index(int t, uint64_t y, uint64_t a) const {
    return offset[t] + M + (L_it - 1 - a) * (2 * M) + y;
  }
  // predecessor pair feeding row t's node i lives in layer t+1
  uint64_t pair_index(int t1, uint64_t j) const {
    return two_rows[t1] ? chain_index(t1, j, 0) : row_index(t1, j);
  }

  struct Decoded {
    enum class Role : uint8_t { Padding, Row, Chain } role;
    int t = 0;
    uint64_t i = 0;  // row position
    uint64_t y = 0, a = 0;
  };

  Decoded decode(uint64_t idx) const {
    Decoded d;
    if (idx < padding) {
      d.role = Decoded::Role::Padding;
      return d;
    }
    int t = n;
    while (t >= 0 && idx >= offset[t] + size[t]) --t;
    if (t < 0) throw std::out_of_range("gadget index");
    d.t = t;
    uint64_t rel = idx - offset[t];
    if (!two_rows[t]) {
      d.role = Decoded::Role::Row;
      d.i = rel;
      return d;
    }
    if (rel < M) {
      d.role = Decoded::Role::Row;
      d.i = rel;
      return d;
    }
    rel -= M;
    d.role = Decoded::Role::Chain;
    d.a = L_it - 1 - rel / (2 * M);
    d.y = rel % (2 * M);
    return d;
  }
};

struct GadgetState {
  GadgetLayout layout;
  RwPhpInstance<IterInstance, uint64_t> rw;
  Cnf f;

  GadgetState(GadgetLayout l, RwPhpInstance<IterInstance, uint64_t> r, Cnf f)
      : layout(std::move(l)), rw(std::move(r)), f(std::move(f)) {}

  uint64_t succ(uint64_t y, uint64_t a) const {
    uint64_t s = rw.inner(y).succ.fetch(a);
    if (s >= layout.L_it) throw std::runtime_error("rwphp gadget: malformed inner instance");
    return s;
  }

  bool inner_solution(uint64_t y, uint64_t a) const { return verify_iter(rw.inner(y), a); }

  // clause written on row node E^t_i (layer variables are x_1..x_t)
  Clause row_clause(int t, uint64_t i) const {
    if (t == 0) return Clause();
    if (!layout.two_rows[t]) {
      Clause c = row_clause(t - 1, i / 2);
      c.lits.push_back(i % 2 == 0 ? t : -t);
      c.canonicalize();
      return c;
    }
    return head_clause(t, rw.f(i));
  }

  // clause written on chain head D^t_{(y,0)}, including the copies
  Clause head_clause(int t, uint64_t y) const {
    uint64_t cap = 2 * layout.row_count[t - 1] - 1;
    uint64_t yy = y < 2 * layout.row_count[t - 1] ? y : cap;
    Clause c = row_clause(t - 1, yy / 2);
    c.lits.push_back(yy % 2 == 0 ? t : -t);
    c.canonicalize();
    return c;
  }

  ResolutionNode node_at(uint64_t idx) const {
    const int64_t maxioms = (int64_t)f.clauses.size();
    auto d = layout.decode(idx);
    using Role = GadgetLayout::Decoded::Role;
    if (d.role == Role::Padding)
      return ResolutionNode::weakening(f.clauses.front(), -maxioms);
    if (d.role == Role::Row) {
      Clause c = d.t == 0 ? Clause() : row_clause(d.t, d.i);
      if (d.t == n_total()) {
        // one assignment falsifies this full-width clause; weaken from an
        // axiom that assignment falsifies
        std::vector<bool> alpha(layout.n, false);
        for (Lit l : c.lits) alpha[var_of(l) - 1] = !positive(l);
        auto ax = f.falsified_clause(alpha);
        if (!ax) throw std::runtime_error("rwphp gadget: F is satisfiable");
        return ResolutionNode::weakening(c, (int64_t)*ax - maxioms);
      }
      uint64_t p1 = layout.pair_index(d.t + 1, 2 * d.i);
      uint64_t p2 = layout.pair_index(d.t + 1, 2 * d.i + 1);
      return ResolutionNode::resolution(c, (int64_t)p1, (int64_t)p2, d.t + 1);
    }
    // chain node D^t_{(y,a)}
    uint64_t s = succ(d.y, d.a);
    if (inner_solution(d.y, d.a)) {
      uint64_t g = rw.label(d.y, d.a);
      uint64_t target = layout.row_index(d.t, g < layout.M ? g : 0);
      return ResolutionNode::weakening(head_clause(d.t, d.y), (int64_t)target);
    }
    if (s == d.a)  // junk: a dead chain entry, parked on the first axiom
      return ResolutionNode::weakening(f.clauses.front(), -maxioms);
    // s > a here: non-solutions never point down
    uint64_t target = layout.chain_index(d.t, d.y, s);
    return ResolutionNode::weakening(head_clause(d.t, d.y), (int64_t)target);
  }

  int n_total() const { return layout.n; }
};

}  // namespace

RwPhpToSizeRefuter rwphp_to_size_refuter(const RwPhpInstance<IterInstance, uint64_t>& rw,
                                         uint64_t inner_len, const Cnf& f, uint64_t s_F) {
  if (rw.N != 2 * rw.M || rw.M == 0)
    throw std::invalid_argument("rwphp gadget: needs N = 2M, M >= 1");
  if (f.nvars < 1 || f.clauses.empty())
    throw std::invalid_argument("rwphp gadget: F must have variables and clauses");
  if (inner_len == 0) throw std::invalid_argument("rwphp gadget: empty inner instances");
  const uint64_t floor_size =
      4 * ((uint64_t)f.nvars * inner_len * rw.M + (uint64_t)f.clauses.size());
  if (s_F < floor_size)
    throw std::invalid_argument("rwphp gadget: s_F below 4*(n*L*M + |F|) = " +
                                std::to_string(floor_size));

  GadgetLayout layout(f.nvars, rw.M, inner_len, s_F);
  auto state = std::make_shared<GadgetState>(layout, rw, f);

  RwPhpToSizeRefuter out;
  out.core_size = layout.core();
  out.instance.cnf = f;
  out.instance.nodes.length = s_F;
  out.instance.nodes.fetch_fn = [state](uint64_t i) { return state->node_at(i); };
  out.node_budget = 4 * (f.nvars + 1);
  out.map_solution =
      [state](int64_t idx) -> std::optional<RwPhpSolution<IterInstance, uint64_t>> {
    if (idx < 0 || (uint64_t)idx >= state->layout.s_F) return std::nullopt;
    auto d = state->layout.decode((uint64_t)idx);
    if (d.role != GadgetLayout::Decoded::Role::Chain) return std::nullopt;
    if (!state->inner_solution(d.y, d.a)) return std::nullopt;
    return RwPhpSolution<IterInstance, uint64_t>{d.y, d.a};
  };
  return out;
}

}  // namespace rfl
