#include "refuterlab/restrictions.hpp"

#include <stdexcept>

#include "refuterlab/formulas.hpp"

namespace rfl {

namespace {

uint64_t checked_size(const BigUint& b) {
  if (b.limbs.size() > 2) throw std::overflow_error("space too large for u64 codes");
  uint64_t v = 0;
  for (size_t i = b.limbs.size(); i-- > 0;) v = (v << 32) | b.limbs[i];
  return v;
}

uint64_t mixed_radix_encode(const std::vector<uint64_t>& digits,
                            const std::vector<uint64_t>& radixes) {
  uint64_t code = 0;
  for (size_t j = 0; j < radixes.size(); ++j) {
    if (digits[j] >= radixes[j]) throw std::out_of_range("digit exceeds radix");
    code = code * radixes[j] + digits[j];
  }
  return code;
}

std::vector<uint64_t> mixed_radix_decode(uint64_t code, const std::vector<uint64_t>& radixes) {
  std::vector<uint64_t> digits(radixes.size(), 0);
  for (size_t j = radixes.size(); j-- > 0;) {
    digits[j] = code % radixes[j];
    code /= radixes[j];
  }
  if (code != 0) throw std::out_of_range("code exceeds space");
  return digits;
}

}  // namespace

// ---- PHP -------------------------------------------------------------------

Restriction MatchingRestriction::induced() const {
  Restriction rho;
  for (auto [u, pu] : edges) {
    rho.set(php_var(u, pu, n), true);
    for (int v = 0; v < n; ++v)
      if (v != pu) rho.set(php_var(u, v, n), false);
    for (int u2 = 0; u2 <= n; ++u2)
      if (u2 != u) rho.set(php_var(u2, pu, n), false);
  }
  return rho;
}

std::vector<int> MatchingRestriction::remaining_pigeons() const {
  std::vector<bool> used(n + 1, false);
  for (auto [u, v] : edges) used[u] = true;
  std::vector<int> out;
  for (int i = 0; i <= n; ++i)
    if (!used[i]) out.push_back(i);
  return out;
}

std::vector<int> MatchingRestriction::remaining_holes() const {
  std::vector<bool> used(n, false);
  for (auto [u, v] : edges) used[v] = true;
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (!used[j]) out.push_back(j);
  return out;
}

std::vector<std::pair<uint64_t, uint64_t>> SeqSpace::radixes() const {
  std::vector<std::pair<uint64_t, uint64_t>> r;
  for (int j = 0; j < t; ++j) r.push_back({(uint64_t)(n + 1 - j), (uint64_t)(n - j)});
  return r;
}

BigUint SeqSpace::size() const {
  BigUint b(1);
  for (auto [p, h] : radixes()) b *= p * h;
  return b;
}

uint64_t SeqSpace::size_u64() const { return checked_size(size()); }

uint64_t SeqSpace::encode(const std::vector<std::pair<int, int>>& picks) const {
  uint64_t code = 0;
  auto rs = radixes();
  for (int j = 0; j < t; ++j) {
    uint64_t r = rs[j].first * rs[j].second;
    uint64_t digit = (uint64_t)picks[j].first * rs[j].second + picks[j].second;
    if (digit >= r) throw std::out_of_range("pick exceeds radix");
    code = code * r + digit;
  }
  return code;
}

std::vector<std::pair<int, int>> SeqSpace::decode(uint64_t code) const {
  auto rs = radixes();
  std::vector<std::pair<int, int>> picks(t);
  for (int j = t; j-- > 0;) {
    uint64_t r = rs[j].first * rs[j].second;
    uint64_t digit = code % r;
    code /= r;
    picks[j] = {(int)(digit / rs[j].second), (int)(digit % rs[j].second)};
  }
  if (code != 0) throw std::out_of_range("code exceeds space");
  return picks;
}

MatchingRestriction SeqSpace::decode_to_matching(uint64_t code) const {
  auto picks = decode(code);
  MatchingRestriction m;
  m.n = n;
  std::vector<int> pigeons, holes;
  for (int i = 0; i <= n; ++i) pigeons.push_back(i);
  for (int j = 0; j < n; ++j) holes.push_back(j);
  for (auto [u, v] : picks) {
    int pu = pigeons[u], pv = holes[v];
    pigeons.erase(pigeons.begin() + u);
    holes.erase(holes.begin() + v);
    m.edges.push_back({pu, pv});
  }
  return m;
}

uint64_t SeqSpace::encode_matching(const MatchingRestriction& m) const {
  std::vector<int> pigeons, holes;
  for (int i = 0; i <= n; ++i) pigeons.push_back(i);
  for (int j = 0; j < n; ++j) holes.push_back(j);
  std::vector<std::pair<int, int>> picks;
  for (auto [pu, pv] : m.edges) {
    auto iu = std::find(pigeons.begin(), pigeons.end(), pu);
    auto iv = std::find(holes.begin(), holes.end(), pv);
    if (iu == pigeons.end() || iv == holes.end()) throw std::invalid_argument("not a matching");
    picks.push_back({(int)(iu - pigeons.begin()), (int)(iv - holes.begin())});
    pigeons.erase(iu);
    holes.erase(iv);
  }
  return encode(picks);
}

std::vector<uint64_t> BadSpace::radixes() const {
  std::vector<uint64_t> r;
  for (int j = 0; j < t; ++j) {
    int64_t v = (int64_t)(n + 1 - j) * (n - j) - W_int;
    r.push_back(v > 0 ? (uint64_t)v : 0);
  }
  return r;
}

bool BadSpace::feasible() const {
  for (uint64_t r : radixes())
    if (r == 0) return false;
  return true;
}

BigUint BadSpace::size() const {
  BigUint b(1);
  for (uint64_t r : radixes()) b *= r;
  return b;
}

uint64_t BadSpace::size_u64() const { return checked_size(size()); }

uint64_t BadSpace::encode_digits(const std::vector<uint64_t>& digits) const {
  return mixed_radix_encode(digits, radixes());
}

std::vector<uint64_t> BadSpace::decode_digits(uint64_t code) const {
  return mixed_radix_decode(code, radixes());
}

namespace {

// One codec round: the available pairs, lexicographic by (pigeon, hole),
// that are absent from the monotonized restricted clause.
struct PhpCodecState {
  int n;
  Clause current;  // restricted clause so far
  bool killed = false;
  std::vector<int> pigeons, holes;

  PhpCodecState(int n, const Clause& c) : n(n), current(c) {
    for (int i = 0; i <= n; ++i) pigeons.push_back(i);
    for (int j = 0; j < n; ++j) holes.push_back(j);
  }

  Clause mono_now() const { return killed ? Clause() : mono_sub(current, n, holes); }

  // apply one matched pair and restrict the clause
  void apply(int pu, int pv) {
    MatchingRestriction one;
    one.n = n;
    one.edges = {{pu, pv}};
    if (!killed) {
      RestrictedClause rc = restrict_clause(current, one.induced());
      killed = killed || rc.killed;
      current = rc.clause;
    }
    pigeons.erase(std::find(pigeons.begin(), pigeons.end(), pu));
    holes.erase(std::find(holes.begin(), holes.end(), pv));
  }

  // eligible pairs in lexicographic order
  std::vector<std::pair<int, int>> eligible() const {
    Clause mc = mono_now();
    std::vector<std::pair<int, int>> out;
    for (int pu : pigeons)
      for (int pv : holes)
        if (!mc.has(php_var(pu, pv, n))) out.push_back({pu, pv});
    return out;
  }
};

}  // namespace

std::optional<uint64_t> bad_to_seq(const Clause& c, uint64_t bad_code, const SeqSpace& seq,
                                   const BadSpace& bad) {
  if (!bad.feasible()) return std::nullopt;
  auto digits = bad.decode_digits(bad_code);
  PhpCodecState st(seq.n, c);
  MatchingRestriction m;
  m.n = seq.n;
  for (int j = 0; j < seq.t; ++j) {
    auto el = st.eligible();
    if (digits[j] >= el.size()) return std::nullopt;
    auto [pu, pv] = el[digits[j]];
    m.edges.push_back({pu, pv});
    st.apply(pu, pv);
  }
  return seq.encode_matching(m);
}

std::optional<uint64_t> seq_to_bad(const Clause& c, uint64_t seq_code, const SeqSpace& seq,
                                   const BadSpace& bad) {
  if (!bad.feasible()) return std::nullopt;
  MatchingRestriction m = seq.decode_to_matching(seq_code);
  PhpCodecState st(seq.n, c);
  std::vector<uint64_t> digits;
  auto radixes = bad.radixes();
  for (int j = 0; j < seq.t; ++j) {
    if (st.killed || st.mono_now().width() < bad.W_int) return std::nullopt;
    auto el = st.eligible();
    auto [pu, pv] = m.edges[j];
    auto it = std::find(el.begin(), el.end(), std::make_pair(pu, pv));
    if (it == el.end()) return std::nullopt;  // the pick would satisfy the clause
    uint64_t rank = (uint64_t)(it - el.begin());
    if (rank >= radixes[j]) return std::nullopt;
    digits.push_back(rank);
    st.apply(pu, pv);
  }
  if (st.killed || st.mono_now().width() < bad.W_int) return std::nullopt;
  return bad.encode_digits(digits);
}

int matching_w_int(int n, int t, uint64_t L) {
  uint64_t a = (uint64_t)(n + 1) * (n + 1);
  uint64_t floor_part = floor_div_root(a, 2 * L, (unsigned)t);
  return (int)(a - floor_part);
}

CountingCheck php_union_bound(int n, int t, int W_int, uint64_t L) {
  SeqSpace seq{n, t};
  BadSpace bad{n, t, W_int};
  CountingCheck out;
  out.codec_feasible = bad.feasible();
  BigUint lhs = bad.size();
  lhs *= L;
  lhs *= 2;
  BigUint rhs = seq.size();
  out.holds = lhs <= rhs;
  out.lhs = lhs.str();
  out.rhs = rhs.str();
  return out;
}

// ---- Tseitin ----------------------------------------------------------------

Restriction EdgeRestriction::induced() const {
  Restriction rho;
  for (auto [e, b] : picks) rho.set(e + 1, b);
  return rho;
}

Graph EdgeRestriction::restricted_graph(const Graph& g) const {
  Graph out;
  out.n = g.n;
  std::vector<bool> drop(g.m(), false);
  for (auto [e, b] : picks) drop[e] = true;
  for (int e = 0; e < g.m(); ++e)
    if (!drop[e]) out.edges.push_back(g.edges[e]);
  return out;
}

std::vector<bool> EdgeRestriction::restricted_tau(const Graph& g,
                                                  const std::vector<bool>& tau) const {
  std::vector<bool> out = tau;
  for (auto [e, b] : picks) {
    if (!b) continue;
    out[g.edges[e].first] = !out[g.edges[e].first];
    out[g.edges[e].second] = !out[g.edges[e].second];
  }
  return out;
}

std::vector<uint64_t> EdgeSeqSpace::radixes() const {
  std::vector<uint64_t> r;
  for (int j = 0; j < t; ++j) r.push_back((uint64_t)(2 * nedges - 2 * j));
  return r;
}

BigUint EdgeSeqSpace::size() const {
  BigUint b(1);
  for (uint64_t r : radixes()) b *= r;
  return b;
}

uint64_t EdgeSeqSpace::size_u64() const { return checked_size(size()); }

uint64_t EdgeSeqSpace::encode_digits(const std::vector<uint64_t>& digits) const {
  return mixed_radix_encode(digits, radixes());
}

std::vector<uint64_t> EdgeSeqSpace::decode_digits(uint64_t code) const {
  return mixed_radix_decode(code, radixes());
}

namespace {

// literal order: (edge 0, +), (edge 0, -), (edge 1, +), ...
struct EdgeCodecState {
  int nedges;
  Clause current;
  bool killed = false;
  std::vector<bool> used;

  EdgeCodecState(int nedges, const Clause& c) : nedges(nedges), current(c), used(nedges, false) {}

  void apply(int e, bool b) {
    if (!killed) {
      Restriction rho;
      rho.set(e + 1, b);
      RestrictedClause rc = restrict_clause(current, rho);
      killed = killed || rc.killed;
      current = rc.clause;
    }
    used[e] = true;
  }

  // available literals (on unused edges), optionally excluding the clause's
  std::vector<std::pair<int, bool>> available(bool exclude_clause) const {
    std::vector<std::pair<int, bool>> out;
    for (int e = 0; e < nedges; ++e) {
      if (used[e]) continue;
      for (bool b : {true, false}) {
        // setting x_e := b corresponds to making literal (e, b) true
        Lit lit = b ? (e + 1) : -(e + 1);
        if (exclude_clause && !killed && current.has(lit)) continue;
        out.push_back({e, b});
      }
    }
    return out;
  }
};

}  // namespace

EdgeRestriction EdgeSeqSpace::decode(uint64_t code) const {
  auto digits = decode_digits(code);
  EdgeCodecState st(nedges, Clause());
  EdgeRestriction r;
  for (int j = 0; j < t; ++j) {
    auto avail = st.available(false);
    auto [e, b] = avail[digits[j]];
    r.picks.push_back({e, b});
    st.apply(e, b);
  }
  return r;
}

uint64_t EdgeSeqSpace::encode(const EdgeRestriction& r) const {
  EdgeCodecState st(nedges, Clause());
  std::vector<uint64_t> digits;
  for (auto [e, b] : r.picks) {
    auto avail = st.available(false);
    auto it = std::find(avail.begin(), avail.end(), std::make_pair(e, b));
    if (it == avail.end()) throw std::invalid_argument("edge reused");
    digits.push_back((uint64_t)(it - avail.begin()));
    st.apply(e, b);
  }
  return encode_digits(digits);
}

std::vector<uint64_t> EdgeBadSpace::radixes() const {
  std::vector<uint64_t> r;
  for (int j = 0; j < t; ++j) {
    int64_t v = 2 * nedges - w - j;
    r.push_back(v > 0 ? (uint64_t)v : 0);
  }
  return r;
}

bool EdgeBadSpace::feasible() const {
  for (uint64_t r : radixes())
    if (r == 0) return false;
  return true;
}

BigUint EdgeBadSpace::size() const {
  BigUint b(1);
  for (uint64_t r : radixes()) b *= r;
  return b;
}

uint64_t EdgeBadSpace::size_u64() const { return checked_size(size()); }

uint64_t EdgeBadSpace::encode_digits(const std::vector<uint64_t>& digits) const {
  return mixed_radix_encode(digits, radixes());
}

std::vector<uint64_t> EdgeBadSpace::decode_digits(uint64_t code) const {
  return mixed_radix_decode(code, radixes());
}

std::optional<uint64_t> edge_bad_to_seq(const Clause& c, uint64_t bad_code,
                                        const EdgeSeqSpace& seq, const EdgeBadSpace& bad) {
  if (!bad.feasible()) return std::nullopt;
  auto digits = bad.decode_digits(bad_code);
  EdgeCodecState st(seq.nedges, c);
  EdgeRestriction r;
  for (int j = 0; j < seq.t; ++j) {
    auto el = st.available(true);
    if (digits[j] >= el.size()) return std::nullopt;
    auto [e, b] = el[digits[j]];
    r.picks.push_back({e, b});
    st.apply(e, b);
  }
  return seq.encode(r);
}

std::optional<uint64_t> edge_seq_to_bad(const Clause& c, uint64_t seq_code,
                                        const EdgeSeqSpace& seq, const EdgeBadSpace& bad) {
  if (!bad.feasible()) return std::nullopt;
  EdgeRestriction r = seq.decode(seq_code);
  EdgeCodecState st(seq.nedges, c);
  std::vector<uint64_t> digits;
  auto radixes = bad.radixes();
  for (int j = 0; j < seq.t; ++j) {
    if (st.killed || st.current.width() < bad.w) return std::nullopt;
    auto el = st.available(true);
    auto [e, b] = r.picks[j];
    auto it = std::find(el.begin(), el.end(), std::make_pair(e, b));
    if (it == el.end()) return std::nullopt;
    uint64_t rank = (uint64_t)(it - el.begin());
    if (rank >= radixes[j]) return std::nullopt;
    digits.push_back(rank);
    st.apply(e, b);
  }
  if (st.killed || st.current.width() < bad.w) return std::nullopt;
  return bad.encode_digits(digits);
}

CountingCheck tseitin_union_bound(int nedges, int t, int w, uint64_t L) {
  EdgeSeqSpace seq{nedges, t};
  EdgeBadSpace bad{nedges, t, w};
  CountingCheck out;
  out.codec_feasible = bad.feasible();
  BigUint lhs = bad.size();
  lhs *= L;
  lhs *= 2;
  BigUint rhs = seq.size();
  out.holds = lhs <= rhs;
  out.lhs = lhs.str();
  out.rhs = rhs.str();
  return out;
}

}  // namespace rfl
