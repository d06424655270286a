#pragma once

#include <optional>
#include <string>

#include "refuterlab/oracle.hpp"

namespace rfl {

// Pointer-following search over [N]. Forward solutions: x = 0 with S(0) = 0,
// or S(x) < x, or S(x) > x with S(S(x)) = S(x). Reversed flips the roles and
// additionally promises S(N-1) < N-1: solutions are S(x) > x, or S(x) < x
// with S(S(x)) = S(x).
enum class Orientation : uint8_t { Forward, Reversed };

struct IterInstance {
  BlockOracle<uint64_t> succ;
  Orientation orient = Orientation::Forward;

  uint64_t size() const { return succ.length; }
};

// Exact disjunction per orientation; at most 2 block queries.
bool verify_iter(const IterInstance& inst, uint64_t x);

struct IterError {
  std::string message;
};

// Pointer-following with a step budget of N. Reversed orientation requires
// the promise; a violation is reported, never returned as a solution.
std::optional<uint64_t> solve_iter_bruteforce(const IterInstance& inst,
                                              IterError* err = nullptr);

// All solutions by exhaustive scan (test oracle and CLI --bruteforce --all).
std::vector<uint64_t> scan_iter_solutions(const IterInstance& inst);

IterInstance iter_from_table(std::vector<uint64_t> table, Orientation o);

// Little-endian 64-bit array files.
void write_iter_file(const IterInstance& inst, const std::string& path);
IterInstance read_iter_file(const std::string& path, Orientation o);

}  // namespace rfl
