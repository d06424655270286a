#pragma once

#include "refuterlab/oracle.hpp"

namespace rfl {

// A total search problem in the query model: instances are block oracles,
// verification is a bounded-query predicate. Totality is a property of each
// concrete problem, not of this type.
template <typename B, typename Sol>
struct SearchProblem {
  uint64_t length = 0;
  int verify_budget = 0;
  std::function<bool(const BlockOracle<B>&, const Sol&)> verify;
};

// A reduction between query-model problems: an instance map exposing every
// output block as a bounded-query function of the input oracle, plus a map
// sending valid output solutions back to input solutions.
template <typename InB, typename OutB, typename InSol, typename OutSol>
struct Reduction {
  uint64_t in_length = 0;
  uint64_t out_length = 0;
  int block_budget = 0;  // declared per-block depth
  int map_budget = 0;
  std::function<OutB(const BlockOracle<InB>&, uint64_t)> out_block;
  std::function<InSol(const BlockOracle<InB>&, const OutSol&)> map_solution;
};

template <typename InB, typename OutB, typename InSol, typename OutSol>
BlockOracle<OutB> apply_reduction(const Reduction<InB, OutB, InSol, OutSol>& r,
                                  const BlockOracle<InB>& in) {
  if (in.length != r.in_length) throw std::invalid_argument("reduction: input length mismatch");
  BlockOracle<OutB> o;
  o.length = r.out_length;
  o.fetch_fn = [r, in](uint64_t i) { return r.out_block(in, i); };
  return o;
}

// r1: P -> Q, r2: Q -> R gives P -> R. The composed per-block budget is the
// product; the solution map applies r2's map first.
template <typename BP, typename BQ, typename BR, typename SP, typename SQ, typename SR>
Reduction<BP, BR, SP, SR> compose(const Reduction<BP, BQ, SP, SQ>& r1,
                                  const Reduction<BQ, BR, SQ, SR>& r2) {
  if (r1.out_length != r2.in_length) throw std::invalid_argument("compose: schema mismatch at Q");
  Reduction<BP, BR, SP, SR> r;
  r.in_length = r1.in_length;
  r.out_length = r2.out_length;
  r.block_budget = r1.block_budget * r2.block_budget;
  r.map_budget = r1.map_budget * std::max(1, r2.map_budget);
  r.out_block = [r1, r2](const BlockOracle<BP>& in, uint64_t i) {
    return r2.out_block(apply_reduction(r1, in), i);
  };
  r.map_solution = [r1, r2](const BlockOracle<BP>& in, const SR& sol) {
    SQ mid = r2.map_solution(apply_reduction(r1, in), sol);
    return r1.map_solution(in, mid);
  };
  return r;
}

// Max over output blocks of the measured block depth of one out_block call.
template <typename InB, typename OutB, typename InSol, typename OutSol>
uint64_t measure_block_depth(const Reduction<InB, OutB, InSol, OutSol>& r,
                             const BlockOracle<InB>& in) {
  uint64_t worst = 0;
  for (uint64_t i = 0; i < r.out_length; ++i) {
    QueryMeter m;
    auto v = metered_view(in, m);
    (void)r.out_block(v, i);
    worst = std::max(worst, m.block_depth());
  }
  return worst;
}

}  // namespace rfl
