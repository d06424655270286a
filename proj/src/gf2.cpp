#include "refuterlab/gf2.hpp"

namespace rfl {

bool gf2_solvable(const Gf2System& sys) {
  const int words = (sys.nvars + 63) / 64;
  std::vector<std::vector<uint64_t>> m;
  std::vector<uint8_t> b;
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    std::vector<uint64_t> row(words, 0);
    for (int v : sys.rows[r]) row[v / 64] ^= uint64_t(1) << (v % 64);
    m.push_back(std::move(row));
    b.push_back(sys.rhs[r]);
  }
  size_t rank = 0;
  for (int col = 0; col < sys.nvars && rank < m.size(); ++col) {
    size_t piv = rank;
    while (piv < m.size() && !((m[piv][col / 64] >> (col % 64)) & 1)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    std::swap(b[piv], b[rank]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r != rank && ((m[r][col / 64] >> (col % 64)) & 1)) {
        for (int w = 0; w < words; ++w) m[r][w] ^= m[rank][w];
        b[r] ^= b[rank];
      }
    }
    ++rank;
  }
  for (size_t r = 0; r < m.size(); ++r) {
    bool zero = true;
    for (int w = 0; w < words && zero; ++w) zero = m[r][w] == 0;
    if (zero && b[r]) return false;
  }
  return true;
}

}  // namespace rfl
