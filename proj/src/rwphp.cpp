#include "refuterlab/rwphp.hpp"

namespace rfl {

InnerProblem<IterInstance, uint64_t> iter_inner_problem() {
  InnerProblem<IterInstance, uint64_t> p;
  p.verify = [](const IterInstance& inst, const uint64_t& x) { return verify_iter(inst, x); };
  p.solve = [](const IterInstance& inst) { return solve_iter_bruteforce(inst); };
  return p;
}

RwPhpInstance<IterInstance, uint64_t> embed_rwphp(uint64_t M, uint64_t N,
                                                  std::function<uint64_t(uint64_t)> f,
                                                  std::function<uint64_t(uint64_t)> g) {
  RwPhpInstance<IterInstance, uint64_t> out;
  out.M = M;
  out.N = N;
  out.allow_small_stretch = 2 * M > N;
  out.f = std::move(f);
  // one-node instance whose only point is a solution
  out.inner = [](uint64_t) { return iter_from_table({0}, Orientation::Forward); };
  out.label = [g](uint64_t y, const uint64_t&) { return g(y); };
  out.problem = iter_inner_problem();
  return out;
}

}  // namespace rfl
