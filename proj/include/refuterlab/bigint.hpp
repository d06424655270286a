#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rfl {

// Unsigned big integer, base 2^32. Only what the exact counting checks need:
// no division, no negative values.
struct BigUint {
  std::vector<uint32_t> limbs;  // little-endian, no trailing zeros

  BigUint() = default;
  BigUint(uint64_t v);

  bool is_zero() const { return limbs.empty(); }
  static int cmp(const BigUint& a, const BigUint& b);
  bool operator<(const BigUint& b) const { return cmp(*this, b) < 0; }
  bool operator<=(const BigUint& b) const { return cmp(*this, b) <= 0; }
  bool operator==(const BigUint& b) const { return cmp(*this, b) == 0; }

  BigUint& operator*=(uint64_t v);
  BigUint& operator*=(const BigUint& v);
  BigUint& operator+=(const BigUint& v);
  friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

  static BigUint pow(const BigUint& base, unsigned e);

  std::string str() const;  // decimal
};

// floor(a / b^(1/t)): the largest k with k^t * b <= a^t. Exact, via binary
// search over k with big-integer powers.
uint64_t floor_div_root(uint64_t a, uint64_t b, unsigned t);

}  // namespace rfl
