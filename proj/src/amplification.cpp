#include "refuterlab/amplification.hpp"

#include <memory>
#include <stdexcept>

namespace rfl {

namespace {

// Stage-major layout with a per-stage position transform so both
// orientations walk upward in the global order.
struct ChainLayout {
  std::vector<uint64_t> len;
  std::vector<uint64_t> prefix_space;  // product of lengths of earlier stages
  std::vector<uint64_t> base;         // first global index of each stage block

  explicit ChainLayout(const std::vector<uint64_t>& stage_len) : len(stage_len) {
    prefix_space.resize(len.size() + 1, 1);
    for (size_t j = 0; j < len.size(); ++j)
      prefix_space[j + 1] = prefix_space[j] * len[j];
    base.resize(len.size() + 1, 0);
    for (size_t j = 0; j < len.size(); ++j) base[j + 1] = base[j] + prefix_space[j] * len[j];
  }

  uint64_t total() const { return base.back(); }

  uint64_t encode(int j, uint64_t prefix_code, uint64_t pos) const {
    return base[j] + prefix_code * len[j] + pos;
  }

  struct State {
    int j;
    uint64_t prefix_code;
    uint64_t pos;
  };

  State decode(uint64_t idx) const {
    int j = 0;
    while ((size_t)(j + 1) < base.size() && idx >= base[j + 1]) ++j;
    uint64_t rel = idx - base[j];
    return {j, rel / len[j], rel % len[j]};
  }

  std::vector<uint64_t> prefix_digits(int j, uint64_t code) const {
    std::vector<uint64_t> out;
    for (int k = 0; k < j; ++k) {
      out.push_back(code % len[k]);
      code /= len[k];
    }
    return out;
  }

  uint64_t push_digit(int j, uint64_t code, uint64_t digit) const {
    return code + digit * prefix_space[j];
  }
};

uint64_t stage_pos(const IterInstance& inst, uint64_t v) {
  return inst.orient == Orientation::Forward ? v : inst.size() - 1 - v;
}

uint64_t stage_coord(const IterInstance& inst, uint64_t pos) {
  return inst.orient == Orientation::Forward ? pos : inst.size() - 1 - pos;
}

}  // namespace

ComposedIter compose_sequential_iter(const IterChainSpec& spec) {
  if (spec.d <= 0 || (int)spec.stage_len.size() != spec.d)
    throw std::invalid_argument("chain spec: stage count mismatch");
  auto layout = std::make_shared<ChainLayout>(spec.stage_len);
  auto stage = spec.stage;
  const int d = spec.d;

  // answers of a committed prefix, or nullopt if some stage answer fails
  auto prefix_answers = [layout, stage](int j,
                                        uint64_t code) -> std::optional<std::vector<uint64_t>> {
    std::vector<uint64_t> digits = layout->prefix_digits(j, code);
    std::vector<uint64_t> committed;
    for (int k = 0; k < j; ++k) {
      IterInstance inst = stage(k, committed);
      if (!verify_iter(inst, digits[k])) return std::nullopt;
      committed.push_back(digits[k]);
    }
    return committed;
  };

  ComposedIter out;
  out.iter.orient = Orientation::Forward;
  out.iter.succ.length = layout->total();
  out.iter.succ.fetch_fn = [layout, stage, prefix_answers, d](uint64_t idx) -> uint64_t {
    auto st = layout->decode(idx);
    auto answers = prefix_answers(st.j, st.prefix_code);
    if (!answers) return idx;  // invalid prefixes are padding
    IterInstance inst = stage(st.j, *answers);
    uint64_t v = stage_coord(inst, st.pos);
    if (verify_iter(inst, v)) {
      if (st.j == d - 1) return idx;  // full sequence committed: sink
      IterInstance next = stage(st.j + 1, [&] {
        auto a = *answers;
        a.push_back(v);
        return a;
      }());
      uint64_t start = next.orient == Orientation::Forward ? 0 : next.size() - 1;
      return layout->encode(st.j + 1, layout->push_digit(st.j, st.prefix_code, v),
                            stage_pos(next, start));
    }
    uint64_t w = inst.succ.fetch(v);
    if (w >= inst.size() || w == v) return idx;  // dead entry; walkers never land here
    return layout->encode(st.j, st.prefix_code, stage_pos(inst, w));
  };

  auto succ = out.iter.succ;
  out.map_solution = [layout, stage, prefix_answers, succ,
                      d](uint64_t x) -> std::optional<std::vector<uint64_t>> {
    uint64_t target = succ.fetch(x) == x ? x : succ.fetch(x);
    auto st = layout->decode(target);
    if (st.j != d - 1) return std::nullopt;
    auto answers = prefix_answers(st.j, st.prefix_code);
    if (!answers) return std::nullopt;
    IterInstance inst = stage(st.j, *answers);
    uint64_t v = stage_coord(inst, st.pos);
    if (!verify_iter(inst, v)) return std::nullopt;
    answers->push_back(v);
    return answers;
  };
  return out;
}

namespace {

// single-node solved instance used to pad deterministic steps
IterInstance trivial_stage(uint64_t len) {
  std::vector<uint64_t> table(len);
  for (uint64_t i = 0; i < len; ++i) table[i] = i;
  return iter_from_table(std::move(table), Orientation::Forward);
}

}  // namespace

AmplifiedRwPhp amplify_small_stretch(const RwPhpInstance<IterInstance, uint64_t>& in, int d,
                                     uint64_t inner_len) {
  const uint64_t M = in.M;
  if (d <= 0 || M % (uint64_t)d != 0)
    throw std::invalid_argument("amplify: need integral d and M/d (eps*M)");
  const uint64_t eM = M / (uint64_t)d;
  if (in.N != M + eM)
    throw std::invalid_argument("amplify: input stretch must be M -> M + M/d");
  auto base = std::make_shared<RwPhpInstance<IterInstance, uint64_t>>(in);

  // f_k on [M + k*eM]: apply f below M, shift above
  auto fk = [base, M, eM](uint64_t x) { return x < M ? base->f(x) : x + eM; };
  // f_{>=k}: apply f_k, ..., f_{d-1}
  auto f_from = [fk](uint64_t v, int k, int d2) {
    for (int i = k; i < d2; ++i) v = fk(v);
    return v;
  };

  // the y_{k+1} value seen by chain stage s, given earlier stage answers
  auto y_at_stage = [base, M, eM, d](uint64_t y, const std::vector<uint64_t>& prev, int s) {
    uint64_t yk = y;  // y_d
    for (int s2 = 0; s2 < s; ++s2) {
      if (yk >= M + eM)
        yk -= eM;
      else
        yk = base->label(yk, prev[s2]);
    }
    return yk;  // y_{k+1} for k = d-1-s
  };

  AmplifiedRwPhp out;
  out.rw.M = M;
  out.rw.N = 2 * M;
  out.rw.problem = iter_inner_problem();
  out.rw.f = [f_from, d](uint64_t x) { return f_from(x, 0, d); };

  auto make_chain = [base, y_at_stage, d, inner_len, M, eM](uint64_t y) {
    IterChainSpec s;
    s.d = d;
    s.stage_len.assign(d, inner_len);
    s.stage = [base, y_at_stage, y, M, eM, inner_len](int stage_idx,
                                                      const std::vector<uint64_t>& prev) {
      uint64_t yk1 = y_at_stage(y, prev, stage_idx);
      if (yk1 >= M + eM) return trivial_stage(inner_len);
      return base->inner(yk1);
    };
    return s;
  };

  out.rw.inner = [make_chain](uint64_t y) { return compose_sequential_iter(make_chain(y)).iter; };
  out.rw.label = [make_chain, base, y_at_stage, d, M, eM](uint64_t y,
                                                          const uint64_t& ans) -> uint64_t {
    auto seq = compose_sequential_iter(make_chain(y)).map_solution(ans);
    if (!seq) return 0;
    uint64_t yk = y;
    for (int s = 0; s < d; ++s) {
      if (yk >= M + eM)
        yk -= eM;
      else
        yk = base->label(yk, (*seq)[s]);
    }
    return yk;  // y_0
  };

  out.map_solution = [make_chain, base, f_from, y_at_stage, d, M,
                      eM](uint64_t y, const uint64_t& ans)
      -> std::optional<RwPhpSolution<IterInstance, uint64_t>> {
    auto seq = compose_sequential_iter(make_chain(y)).map_solution(ans);
    if (!seq) return std::nullopt;
    // y_k values, k = d downto 0; stage s handles k = d-1-s
    std::vector<uint64_t> ys(d + 1);
    ys[d] = y;
    for (int k = d - 1; k >= 0; --k) {
      int s = d - 1 - k;
      ys[k] = ys[k + 1] >= M + eM ? ys[k + 1] - eM : base->label(ys[k + 1], (*seq)[s]);
    }
    for (int k = 0; k < d; ++k) {
      if (f_from(ys[k], k, d) != y && f_from(ys[k + 1], k + 1, d) == y) {
        int s = d - 1 - k;
        return RwPhpSolution<IterInstance, uint64_t>{ys[k + 1], (*seq)[s]};
      }
    }
    return std::nullopt;
  };
  return out;
}

AmplifiedRwPhp amplify_large_stretch(const RwPhpInstance<IterInstance, uint64_t>& in, uint64_t N,
                                     uint64_t inner_len) {
  const uint64_t M = in.M;
  if (in.N != 2 * M) throw std::invalid_argument("amplify: input stretch must be M -> 2M");
  if (N < 2 * M || (N % M) != 0 || ((N / M) & (N / M - 1)) != 0)
    throw std::invalid_argument("amplify: N must be a power-of-two multiple of M");
  int d = 0;
  for (uint64_t v = N / M; v > 1; v >>= 1) ++d;
  auto base = std::make_shared<RwPhpInstance<IterInstance, uint64_t>>(in);

  // f_k: [2^k M] -> [2^{k+1} M], parallel copies of f
  auto fk = [base, M](uint64_t x) {
    uint64_t x0 = x / M, x1 = x % M;
    return x0 * (2 * M) + base->f(x1);
  };
  auto f_from = [fk](uint64_t v, int k, int d2) {
    for (int i = k; i < d2; ++i) v = fk(v);
    return v;
  };
  // g_{k,y}: copy-local labels
  auto gk = [base, M](uint64_t y, uint64_t ans) {
    return (y / (2 * M)) * M + base->label(y % (2 * M), ans);
  };

  auto y_at_stage = [base, gk, M](uint64_t y, const std::vector<uint64_t>& prev, int s) {
    uint64_t yk = y;
    for (int s2 = 0; s2 < s; ++s2) yk = gk(yk, prev[s2]);
    return yk;
  };

  AmplifiedRwPhp out;
  out.rw.M = M;
  out.rw.N = N;
  out.rw.allow_small_stretch = false;
  out.rw.problem = iter_inner_problem();
  out.rw.f = [f_from, d](uint64_t x) { return f_from(x, 0, d); };

  auto make_chain = [base, y_at_stage, d, inner_len, M](uint64_t y) {
    IterChainSpec s;
    s.d = d;
    s.stage_len.assign(d, inner_len);
    s.stage = [base, y_at_stage, y, M](int stage_idx, const std::vector<uint64_t>& prev) {
      uint64_t yk1 = y_at_stage(y, prev, stage_idx);
      return base->inner(yk1 % (2 * M));
    };
    return s;
  };

  out.rw.inner = [make_chain](uint64_t y) { return compose_sequential_iter(make_chain(y)).iter; };
  out.rw.label = [make_chain, y_at_stage, gk, d](uint64_t y, const uint64_t& ans) -> uint64_t {
    auto seq = compose_sequential_iter(make_chain(y)).map_solution(ans);
    if (!seq) return 0;
    uint64_t yk = y;
    for (int s = 0; s < d; ++s) yk = gk(yk, (*seq)[s]);
    return yk;  // y_0 in [M]
  };

  out.map_solution = [make_chain, base, f_from, gk, d, M](uint64_t y, const uint64_t& ans)
      -> std::optional<RwPhpSolution<IterInstance, uint64_t>> {
    auto seq = compose_sequential_iter(make_chain(y)).map_solution(ans);
    if (!seq) return std::nullopt;
    std::vector<uint64_t> ys(d + 1);
    ys[d] = y;
    for (int k = d - 1; k >= 0; --k) ys[k] = gk(ys[k + 1], (*seq)[d - 1 - k]);
    for (int k = 0; k < d; ++k) {
      if (f_from(ys[k], k, d) != y && f_from(ys[k + 1], k + 1, d) == y) {
        int s = d - 1 - k;
        return RwPhpSolution<IterInstance, uint64_t>{ys[k + 1] % (2 * M), (*seq)[s]};
      }
    }
    return std::nullopt;
  };
  return out;
}

}  // namespace rfl
