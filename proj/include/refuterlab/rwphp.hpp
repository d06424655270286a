#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "refuterlab/iter.hpp"

namespace rfl {

// The inner problem of an rwPHP instance is pluggable: a verifier plus a
// deterministic brute-force solver (smallest solution first, nullopt when the
// instance's promise is broken).
template <typename Inst, typename Sol>
struct InnerProblem {
  std::function<bool(const Inst&, const Sol&)> verify;
  std::function<std::optional<Sol>(const Inst&)> solve;
};

InnerProblem<IterInstance, uint64_t> iter_inner_problem();

// A purported surjection f:[M]->[N] with inner instances I_y and label maps
// g_y. A solution is (y, ans) with ans solving I_y and the labelled preimage
// failing to map back to y. Labels are defined on every candidate answer;
// out-of-range labels count toward a solution.
template <typename Inst, typename Sol>
struct RwPhpInstance {
  uint64_t M = 0, N = 0;
  bool allow_small_stretch = false;  // accept M < N instead of M <= N/2
  std::function<uint64_t(uint64_t)> f;
  std::function<Inst(uint64_t)> inner;
  std::function<uint64_t(uint64_t, const Sol&)> label;
  InnerProblem<Inst, Sol> problem;

  void check_shape() const {
    if (!(M < N)) throw std::invalid_argument("rwPHP: need M < N");
    if (!allow_small_stretch && 2 * M > N)
      throw std::invalid_argument("rwPHP: need M <= N/2 (or the small-stretch flag)");
  }
};

template <typename Inst, typename Sol>
struct RwPhpSolution {
  uint64_t y = 0;
  Sol ans{};
};

template <typename Inst, typename Sol>
bool verify_rwphp(const RwPhpInstance<Inst, Sol>& inst, uint64_t y, const Sol& ans) {
  if (y >= inst.N) return false;
  if (!inst.problem.verify(inst.inner(y), ans)) return false;
  uint64_t g = inst.label(y, ans);
  if (g >= inst.M) return true;  // mislabelled answers witness the failure directly
  return inst.f(g) != y;
}

// Scan y outside range(f) in increasing order (one exists by counting) and
// solve the inner instance by brute force; skip y whose inner instance cannot
// be solved.
template <typename Inst, typename Sol>
std::optional<RwPhpSolution<Inst, Sol>> solve_rwphp_bruteforce(
    const RwPhpInstance<Inst, Sol>& inst) {
  inst.check_shape();
  std::vector<bool> in_range(inst.N, false);
  for (uint64_t x = 0; x < inst.M; ++x) {
    uint64_t v = inst.f(x);
    if (v < inst.N) in_range[v] = true;
  }
  for (uint64_t y = 0; y < inst.N; ++y) {
    if (in_range[y]) continue;
    auto ans = inst.problem.solve(inst.inner(y));
    if (!ans) continue;
    if (verify_rwphp(inst, y, *ans)) return RwPhpSolution<Inst, Sol>{y, *ans};
  }
  return std::nullopt;
}

// Depth-1 embedding of a bare inner instance: constant f, every I_y the given
// instance, every label 0. Any rwPHP solution's answer solves the instance.
template <typename Inst, typename Sol>
RwPhpInstance<Inst, Sol> embed_inner(Inst instance, InnerProblem<Inst, Sol> problem,
                                     uint64_t N = 2) {
  RwPhpInstance<Inst, Sol> out;
  out.M = N / 2;
  out.N = N;
  out.f = [](uint64_t) { return uint64_t(0); };
  out.inner = [instance](uint64_t) { return instance; };
  out.label = [](uint64_t, const Sol&) { return uint64_t(0); };
  out.problem = std::move(problem);
  return out;
}

// Depth-1 embedding of a bare retraction pair (f, g): trivial inner
// instances; each label is g(y). A solution's y solves the retraction
// instance.
RwPhpInstance<IterInstance, uint64_t> embed_rwphp(uint64_t M, uint64_t N,
                                                  std::function<uint64_t(uint64_t)> f,
                                                  std::function<uint64_t(uint64_t)> g);

// An instance-level reduction between inner problems, used to transport rwPHP
// instances across them.
template <typename PInst, typename PSol, typename QInst, typename QSol>
struct InnerReduction {
  int depth = 1;
  std::function<QInst(const PInst&)> map_instance;
  std::function<PSol(const PInst&, const QSol&)> map_solution;
};

// f unchanged; inner instances and labels mapped through the reduction.
template <typename PInst, typename PSol, typename QInst, typename QSol>
RwPhpInstance<QInst, QSol> lift_reduction(const InnerReduction<PInst, PSol, QInst, QSol>& r,
                                          const RwPhpInstance<PInst, PSol>& in,
                                          InnerProblem<QInst, QSol> qproblem) {
  RwPhpInstance<QInst, QSol> out;
  out.M = in.M;
  out.N = in.N;
  out.allow_small_stretch = in.allow_small_stretch;
  out.f = in.f;
  out.inner = [r, in](uint64_t y) { return r.map_instance(in.inner(y)); };
  out.label = [r, in](uint64_t y, const QSol& ans) {
    PInst py = in.inner(y);
    return in.label(y, r.map_solution(py, ans));
  };
  out.problem = std::move(qproblem);
  return out;
}

}  // namespace rfl
