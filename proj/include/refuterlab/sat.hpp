#pragma once

#include <optional>

#include "refuterlab/cnf.hpp"

namespace rfl {

// Exhaustive satisfiability check; intended for <= ~24 variables.
std::optional<std::vector<bool>> solve_bruteforce(const Cnf& f, int var_cap = 24);

// Plain DPLL with unit propagation, for the structured instances that exceed
// the brute-force cap. Returns a model if satisfiable.
std::optional<std::vector<bool>> solve_dpll(const Cnf& f);

bool is_unsat(const Cnf& f);

}  // namespace rfl
