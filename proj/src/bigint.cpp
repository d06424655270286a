#include "refuterlab/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace rfl {

BigUint::BigUint(uint64_t v) {
  while (v) {
    limbs.push_back((uint32_t)v);
    v >>= 32;
  }
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
  if (a.limbs.size() != b.limbs.size()) return a.limbs.size() < b.limbs.size() ? -1 : 1;
  for (size_t i = a.limbs.size(); i-- > 0;)
    if (a.limbs[i] != b.limbs[i]) return a.limbs[i] < b.limbs[i] ? -1 : 1;
  return 0;
}

BigUint& BigUint::operator*=(uint64_t v) {
  return *this *= BigUint(v);
}

BigUint& BigUint::operator*=(const BigUint& v) {
  if (is_zero() || v.is_zero()) {
    limbs.clear();
    return *this;
  }
  std::vector<uint32_t> out(limbs.size() + v.limbs.size(), 0);
  for (size_t i = 0; i < limbs.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < v.limbs.size(); ++j) {
      uint64_t cur = (uint64_t)limbs[i] * v.limbs[j] + out[i + j] + carry;
      out[i + j] = (uint32_t)cur;
      carry = cur >> 32;
    }
    size_t k = i + v.limbs.size();
    while (carry) {
      uint64_t cur = (uint64_t)out[k] + carry;
      out[k] = (uint32_t)cur;
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  limbs = std::move(out);
  return *this;
}

BigUint& BigUint::operator+=(const BigUint& v) {
  limbs.resize(std::max(limbs.size(), v.limbs.size()) + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < limbs.size(); ++i) {
    uint64_t cur = (uint64_t)limbs[i] + carry + (i < v.limbs.size() ? v.limbs[i] : 0);
    limbs[i] = (uint32_t)cur;
    carry = cur >> 32;
  }
  while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  return *this;
}

BigUint BigUint::pow(const BigUint& base, unsigned e) {
  BigUint r(1);
  BigUint b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string BigUint::str() const {
  if (is_zero()) return "0";
  // repeated division by 10^9 via schoolbook
  std::vector<uint32_t> v = limbs;
  std::string out;
  while (!v.empty()) {
    uint64_t rem = 0;
    for (size_t i = v.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | v[i];
      v[i] = (uint32_t)(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!v.empty() && v.back() == 0) v.pop_back();
    std::string chunk = std::to_string(rem);
    if (!v.empty()) chunk = std::string(9 - chunk.size(), '0') + chunk;
    out = chunk + out;
  }
  return out;
}

uint64_t floor_div_root(uint64_t a, uint64_t b, unsigned t) {
  if (t == 0) throw std::invalid_argument("t must be positive");
  if (b == 0) throw std::invalid_argument("b must be positive");
  BigUint at = BigUint::pow(BigUint(a), t);
  uint64_t lo = 0, hi = a;  // b >= 1 so k <= a
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo + 1) / 2;
    BigUint lhs = BigUint::pow(BigUint(mid), t);
    lhs *= b;
    if (lhs <= at)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace rfl
