#include "refuterlab/xor_restrictions.hpp"

#include <stdexcept>

#include "refuterlab/formulas.hpp"

namespace rfl {

Restriction XorRestriction::induced() const {
  Restriction rho;
  for (int i = 0; i < n; ++i) {
    int v = set_x[i] ? xor_x(i + 1) : xor_y(i + 1);
    rho.set(v, value[i]);
  }
  return rho;
}

uint64_t xor_standard_encode(const XorRestriction& r) {
  uint64_t code = 0;
  for (int i = 0; i < r.n; ++i) {
    code |= (uint64_t)(r.set_x[i] ? 1 : 0) << (2 * i);
    code |= (uint64_t)(r.value[i] ? 1 : 0) << (2 * i + 1);
  }
  return code;
}

XorRestriction xor_standard_decode(int n, uint64_t code) {
  XorRestriction r;
  r.n = n;
  r.set_x.resize(n);
  r.value.resize(n);
  for (int i = 0; i < n; ++i) {
    r.set_x[i] = (code >> (2 * i)) & 1;
    r.value[i] = (code >> (2 * i + 1)) & 1;
  }
  return r;
}

namespace {

// the four per-index assignments in a fixed order
struct PairChoice {
  bool set_x;
  bool value;
};
constexpr PairChoice kChoices[4] = {{true, false}, {true, true}, {false, false}, {false, true}};

// whether the assignment satisfies some literal of c on this pair index
bool satisfies_on_index(const Clause& c, int n_full, int i, PairChoice pc) {
  (void)n_full;
  Lit made_true = pc.set_x ? (pc.value ? xor_x(i + 1) : -xor_x(i + 1))
                           : (pc.value ? xor_y(i + 1) : -xor_y(i + 1));
  return c.has(made_true);
}

std::vector<int> allowed_on_index(const Clause& c, int n, int i) {
  std::vector<int> out;
  for (int k = 0; k < 4; ++k)
    if (!satisfies_on_index(c, n, i, kChoices[k])) out.push_back(k);
  return out;
}

}  // namespace

std::optional<uint64_t> xor_short_encode(int n, const Clause& c, const XorRestriction& r) {
  uint64_t code = 0;
  for (int i = 0; i < n; ++i) {
    auto allowed = allowed_on_index(c, n, i);
    int choice = -1;
    for (size_t k = 0; k < allowed.size(); ++k) {
      PairChoice pc = kChoices[allowed[k]];
      if (pc.set_x == (bool)r.set_x[i] && pc.value == (bool)r.value[i]) choice = (int)k;
    }
    if (choice < 0) return std::nullopt;  // the restriction satisfies the clause here
    code = code * allowed.size() + (uint64_t)choice;
  }
  return code;
}

std::optional<XorRestriction> xor_short_decode(int n, const Clause& c, uint64_t code) {
  // radixes per index, then standard mixed-radix decode
  std::vector<std::vector<int>> allowed(n);
  uint64_t space = 1;
  for (int i = 0; i < n; ++i) {
    allowed[i] = allowed_on_index(c, n, i);
    if (allowed[i].empty()) return std::nullopt;
    space *= allowed[i].size();
  }
  if (code >= space) return std::nullopt;
  XorRestriction r;
  r.n = n;
  r.set_x.resize(n);
  r.value.resize(n);
  for (int i = n; i-- > 0;) {
    uint64_t radix = allowed[i].size();
    PairChoice pc = kChoices[allowed[i][code % radix]];
    code /= radix;
    r.set_x[i] = pc.set_x;
    r.value[i] = pc.value;
  }
  return r;
}

BigUint xor_short_space(int n, const Clause& c) {
  BigUint b(1);
  for (int i = 0; i < n; ++i) b *= (uint64_t)allowed_on_index(c, n, i).size();
  return b;
}

BigUint xor_short_bound(int n, int w) {
  BigUint b(1);
  for (int i = 0; i < w; ++i) b *= 3;
  for (int i = 0; i < n - w; ++i) b *= 4;
  return b;
}

CountingCheck xor_union_bound(int n, int w, uint64_t L) {
  CountingCheck out;
  out.codec_feasible = w >= 0 && w <= n;
  BigUint lhs = xor_short_bound(n, w);
  lhs *= L;
  lhs *= 100;
  BigUint rhs = BigUint::pow(BigUint(4), (unsigned)n);
  rhs *= 99;
  out.holds = BigUint::cmp(lhs, rhs) < 0;
  out.lhs = lhs.str();
  out.rhs = rhs.str();
  return out;
}

}  // namespace rfl
