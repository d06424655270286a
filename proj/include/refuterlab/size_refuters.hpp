#pragma once

#include "refuterlab/restrictions.hpp"
#include "refuterlab/rwphp.hpp"
#include "refuterlab/width_refuters.hpp"
#include "refuterlab/xor_restrictions.hpp"

namespace rfl {

// ---- PHP size refuter -> rwPHP over the monotone-width walk ----------------

struct PhpSizeParams {
  int n = 0;        // PHP_{(n+1)->n}
  int t = 0;        // matched pairs
  int W_int = 0;    // integer fat threshold (>= this monotone width compresses)
  uint64_t L = 0;   // purported proof length
  bool force = false;  // skip the counting-premise gate
};

struct PhpSizeReduction {
  RwPhpInstance<IterInstance, uint64_t> rw;
  // A verified rwPHP solution names an invalid node of the input proof.
  std::function<int64_t(uint64_t, uint64_t)> map_solution;
  int f_budget = 1, inner_budget = 3, label_budget = 2;
  SeqSpace seq;
  BadSpace bad;
};

PhpSizeReduction php_size_refuter_to_rwphp(const RefutationInstance& inst,
                                           const PhpSizeParams& p);

// ---- Tseitin size refuter -> rwPHP -----------------------------------------

struct TseitinSizeParams {
  int t = 0;
  uint64_t L = 0;
  bool force = false;
};

struct TseitinSizeReduction {
  RwPhpInstance<IterInstance, uint64_t> rw;
  // invalid node or balanced-cut witness for the original graph
  std::function<WidthRefuterAnswer(uint64_t, uint64_t)> map_solution;
  int f_budget = 1, inner_budget = 3, label_budget = 2;
  int expansion_e = 0, w = 0;
  EdgeSeqSpace seq;
  EdgeBadSpace bad;
};

TseitinSizeReduction tseitin_size_refuter_to_rwphp(const Graph& g, const std::vector<bool>& tau,
                                                   const RefutationInstance& inst,
                                                   const TseitinSizeParams& p);

// ---- XOR-lifted size refuter -> rwPHP over a base width refuter ------------

struct XorLiftParams {
  int w = 0;  // width threshold for the base formula
  bool force = false;
};

// Inner instances are width-capped purported refutations of the base formula;
// plug any base width-refuter reduction (e.g. the universal walk) via
// lift_reduction to land in rwPHP(PLS).
struct XorLiftReduction {
  RwPhpInstance<RefutationInstance, int64_t> rw;
  std::function<int64_t(uint64_t, int64_t)> map_solution;
  int f_budget = 1, inner_budget = 1, label_budget = 1;
};

InnerProblem<RefutationInstance, int64_t> width_refuter_inner_problem();

XorLiftReduction xorlift_size_refuter_to_rwphp(const Cnf& base_f,
                                               const RefutationInstance& inst,
                                               const XorLiftParams& p);

}  // namespace rfl
