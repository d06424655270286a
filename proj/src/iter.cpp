#include "refuterlab/iter.hpp"

#include <fstream>

namespace rfl {

bool verify_iter(const IterInstance& inst, uint64_t x) {
  const uint64_t n = inst.size();
  if (x >= n) return false;
  uint64_t sx = inst.succ.fetch(x);
  if (sx >= n) return false;  // malformed pointer never verifies
  if (inst.orient == Orientation::Forward) {
    if (x == 0 && sx == 0) return true;
    if (sx < x) return true;
    if (sx > x) return inst.succ.fetch(sx) == sx;
    return false;
  }
  if (sx > x) return true;
  if (sx < x) return inst.succ.fetch(sx) == sx;
  return false;
}

std::optional<uint64_t> solve_iter_bruteforce(const IterInstance& inst, IterError* err) {
  const uint64_t n = inst.size();
  if (n == 0) {
    if (err) err->message = "empty instance";
    return std::nullopt;
  }
  if (inst.orient == Orientation::Forward) {
    uint64_t x = 0;
    uint64_t sx = inst.succ.fetch(0);
    if (sx == 0) return 0;
    for (uint64_t steps = 0; steps <= n; ++steps) {
      if (sx >= n) {
        if (err) err->message = "pointer out of range at " + std::to_string(x);
        return std::nullopt;
      }
      if (sx < x) return x;
      if (sx == x) {
        if (err) err->message = "reached a non-solution self-loop";
        return std::nullopt;
      }
      uint64_t next = inst.succ.fetch(sx);
      if (next == sx) return x;  // S(x) > x and S(S(x)) = S(x)
      x = sx;
      sx = next;
    }
    if (err) err->message = "step budget exceeded";
    return std::nullopt;
  }
  // reversed: walk down from N-1
  uint64_t x = n - 1;
  uint64_t sx = inst.succ.fetch(x);
  if (sx >= n) {
    if (err) err->message = "pointer out of range at top";
    return std::nullopt;
  }
  if (sx == x) {
    if (err) err->message = "promise violated: S(N-1) = N-1";
    return std::nullopt;
  }
  for (uint64_t steps = 0; steps <= n; ++steps) {
    uint64_t next = inst.succ.fetch(sx);
    if (next >= n) {
      if (err) err->message = "pointer out of range at " + std::to_string(sx);
      return std::nullopt;
    }
    if (next == sx) return x;  // S(x) < x and S(S(x)) = S(x)
    if (next > sx) return sx;  // S at sx points up
    x = sx;
    sx = next;
  }
  if (err) err->message = "step budget exceeded";
  return std::nullopt;
}

std::vector<uint64_t> scan_iter_solutions(const IterInstance& inst) {
  std::vector<uint64_t> out;
  for (uint64_t x = 0; x < inst.size(); ++x)
    if (verify_iter(inst, x)) out.push_back(x);
  return out;
}

IterInstance iter_from_table(std::vector<uint64_t> table, Orientation o) {
  IterInstance inst;
  inst.succ = BlockOracle<uint64_t>::materialized(std::move(table));
  inst.orient = o;
  return inst;
}

void write_iter_file(const IterInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (uint64_t i = 0; i < inst.size(); ++i) {
    uint64_t v = inst.succ.fetch(i);
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = (v >> (8 * k)) & 0xff;
    out.write(reinterpret_cast<char*>(b), 8);
  }
}

IterInstance read_iter_file(const std::string& path, Orientation o) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint64_t> table;
  unsigned char b[8];
  while (in.read(reinterpret_cast<char*>(b), 8)) {
    uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= uint64_t(b[k]) << (8 * k);
    table.push_back(v);
  }
  return iter_from_table(std::move(table), o);
}

}  // namespace rfl
