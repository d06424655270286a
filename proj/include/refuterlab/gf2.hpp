#pragma once

#include <cstdint>
#include <vector>

namespace rfl {

// A linear system over GF(2): each row is a set of variable indices plus a
// right-hand side bit.
struct Gf2System {
  int nvars = 0;
  std::vector<std::vector<int>> rows;
  std::vector<uint8_t> rhs;

  void add_equation(std::vector<int> vars, bool b) {
    rows.push_back(std::move(vars));
    rhs.push_back(b ? 1 : 0);
  }
};

// Gaussian elimination with pivoting by column order.
bool gf2_solvable(const Gf2System& sys);

}  // namespace rfl
