#include "refuterlab/sat.hpp"

#include <stdexcept>

namespace rfl {

std::optional<std::vector<bool>> solve_bruteforce(const Cnf& f, int var_cap) {
  if (f.nvars > var_cap) throw std::runtime_error("brute-force SAT: too many variables");
  std::vector<bool> a(f.nvars);
  for (uint64_t m = 0; m < (uint64_t(1) << f.nvars); ++m) {
    for (int v = 0; v < f.nvars; ++v) a[v] = (m >> v) & 1;
    if (f.eval(a)) return a;
  }
  return std::nullopt;
}

namespace {

// 0 = unset, 1 = true, -1 = false
struct DpllState {
  const Cnf& f;
  std::vector<int8_t> val;
  explicit DpllState(const Cnf& f) : f(f), val(f.nvars + 1, 0) {}

  // returns false on conflict
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : f.clauses) {
        int unassigned = 0;
        Lit last = 0;
        bool sat = false;
        for (Lit l : c.lits) {
          int8_t v = val[var_of(l)];
          if (v == 0) {
            ++unassigned;
            last = l;
          } else if ((v > 0) == positive(l)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          val[var_of(last)] = positive(last) ? 1 : -1;
          trail.push_back(var_of(last));
          changed = true;
        }
      }
    }
    return true;
  }

  int pick() const {
    for (const auto& c : f.clauses) {
      bool sat = false;
      Lit cand = 0;
      for (Lit l : c.lits) {
        int8_t v = val[var_of(l)];
        if (v == 0 && cand == 0) cand = l;
        if (v != 0 && (v > 0) == positive(l)) {
          sat = true;
          break;
        }
      }
      if (!sat && cand != 0) return var_of(cand);
    }
    return 0;
  }

  bool all_sat() const {
    for (const auto& c : f.clauses) {
      bool sat = false;
      for (Lit l : c.lits) {
        int8_t v = val[var_of(l)];
        if (v != 0 && (v > 0) == positive(l)) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  bool search() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      for (int v : trail) val[v] = 0;
      return false;
    }
    int v = pick();
    if (v == 0) {
      if (all_sat()) return true;
      for (int x : trail) val[x] = 0;
      return false;
    }
    for (int8_t b : {int8_t(1), int8_t(-1)}) {
      val[v] = b;
      if (search()) return true;
      val[v] = 0;
    }
    for (int x : trail) val[x] = 0;
    return false;
  }
};

}  // namespace

std::optional<std::vector<bool>> solve_dpll(const Cnf& f) {
  for (const auto& c : f.clauses)
    if (c.empty()) return std::nullopt;
  DpllState st(f);
  if (!st.search()) return std::nullopt;
  std::vector<bool> model(f.nvars);
  for (int v = 1; v <= f.nvars; ++v) model[v - 1] = st.val[v] > 0;
  return model;
}

bool is_unsat(const Cnf& f) {
  if (f.nvars <= 22) return !solve_bruteforce(f, 22).has_value();
  return !solve_dpll(f).has_value();
}

}  // namespace rfl
