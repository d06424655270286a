#pragma once

#include <optional>

#include "refuterlab/bigint.hpp"
#include "refuterlab/clause.hpp"
#include "refuterlab/restrictions.hpp"

namespace rfl {

// A restriction of an XOR-lifted formula: per base index, one of the pair
// (x_i, y_i) is assigned and the other stays free.
struct XorRestriction {
  int n = 0;                           // base variables
  std::vector<bool> set_x;             // which half is assigned
  std::vector<bool> value;             // assigned bit

  Restriction induced() const;         // over lifted variables
  // Sign adjustment for reading the surviving half as the base variable:
  // a surviving literal with sign s on pair i denotes z_i^(s xor value[i]).
  bool flip(int i) const { return value[i]; }
};

// Standard encoding: two bits per index, (indicator: 1 = x assigned, value).
uint64_t xor_standard_encode(const XorRestriction& r);
XorRestriction xor_standard_decode(int n, uint64_t code);

// Short encoding relative to a clause over the lifted variables: per index a
// digit ranking the assignment among those not satisfying any of the
// clause's literals on that index. Fails on restrictions that satisfy the
// clause.
std::optional<uint64_t> xor_short_encode(int n, const Clause& c, const XorRestriction& r);
std::optional<XorRestriction> xor_short_decode(int n, const Clause& c, uint64_t code);
BigUint xor_short_space(int n, const Clause& c);

// Exact premise 100 * L * 3^w * 4^(n-w) < 99 * 4^n.
CountingCheck xor_union_bound(int n, int w, uint64_t L);

// Uniform short-code bound 3^w * 4^(n-w); codes of clauses of width >= w fit.
BigUint xor_short_bound(int n, int w);

}  // namespace rfl
