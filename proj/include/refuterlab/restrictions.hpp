#pragma once

#include <optional>
#include <string>

#include "refuterlab/bigint.hpp"
#include "refuterlab/clause.hpp"
#include "refuterlab/cri.hpp"
#include "refuterlab/graph.hpp"

namespace rfl {

// ---- PHP matching restrictions --------------------------------------------

// An ordered sequence of t matched (pigeon, hole) pairs over PHP_{(n+1)->n}.
struct MatchingRestriction {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Restriction induced() const;            // x_{u,pi(u)}=1, row/column zeros
  std::vector<int> remaining_pigeons() const;
  std::vector<int> remaining_holes() const;
};

// Edge-sequence codec for PHP: round j picks the u-th unused pigeon and the
// v-th unused hole, u in [n+1-j], v in [n-j].
struct SeqSpace {
  int n = 0, t = 0;

  std::vector<std::pair<uint64_t, uint64_t>> radixes() const;  // (pigeons, holes) per round
  BigUint size() const;
  uint64_t size_u64() const;  // throws on overflow
  uint64_t encode(const std::vector<std::pair<int, int>>& picks) const;  // reduced indices
  std::vector<std::pair<int, int>> decode(uint64_t code) const;
  MatchingRestriction decode_to_matching(uint64_t code) const;
  uint64_t encode_matching(const MatchingRestriction& m) const;
};

// Compressed codec relative to a clause: round j picks the b_j-th available
// pair absent from the monotonized restricted clause; radix
// (n+1-j)(n-j) - W_int per round.
struct BadSpace {
  int n = 0, t = 0, W_int = 0;

  std::vector<uint64_t> radixes() const;  // zero when a factor would be non-positive
  bool feasible() const;                  // all factors positive
  BigUint size() const;
  uint64_t size_u64() const;
  uint64_t encode_digits(const std::vector<uint64_t>& digits) const;
  std::vector<uint64_t> decode_digits(uint64_t code) const;
};

// Decode a compressed code against a clause; nullopt when some digit exceeds
// the available pairs. The result is an edge-sequence code.
std::optional<uint64_t> bad_to_seq(const Clause& c, uint64_t bad_code, const SeqSpace& seq,
                                   const BadSpace& bad);

// Inverse: compress an edge-sequence against a clause; nullopt unless the
// sequence is bad for the clause (the monotone width stays >= W_int through
// every round and the clause survives).
std::optional<uint64_t> seq_to_bad(const Clause& c, uint64_t seq_code, const SeqSpace& seq,
                                   const BadSpace& bad);

// W_int = ceil((n+1)^2 * (1 - (1/(2L))^(1/t))), exactly.
int matching_w_int(int n, int t, uint64_t L);

// Exact counting premise |BAD| * L <= |SEQ| / 2 (equivalently 2|BAD|L <= |SEQ|).
struct CountingCheck {
  bool holds = false;
  bool codec_feasible = false;
  std::string lhs, rhs;  // decimal, for reporting
};
CountingCheck php_union_bound(int n, int t, int W_int, uint64_t L);

// ---- Tseitin edge restrictions --------------------------------------------

// An ordered sequence of t literals set to true: x_e := b removes edge e and,
// when b = 1, flips tau at both endpoints.
struct EdgeRestriction {
  std::vector<std::pair<int, bool>> picks;  // (edge index, value)

  Restriction induced() const;  // over edge variables e+1
  Graph restricted_graph(const Graph& g) const;
  std::vector<bool> restricted_tau(const Graph& g, const std::vector<bool>& tau) const;
};

// Literal-sequence codec: 2|E| literals ordered by (edge, positive first);
// round j picks among literals on unused edges, radix 2|E| - 2j.
struct EdgeSeqSpace {
  int nedges = 0, t = 0;

  std::vector<uint64_t> radixes() const;
  BigUint size() const;
  uint64_t size_u64() const;
  uint64_t encode_digits(const std::vector<uint64_t>& digits) const;
  std::vector<uint64_t> decode_digits(uint64_t code) const;
  EdgeRestriction decode(uint64_t code) const;
  uint64_t encode(const EdgeRestriction& r) const;
};

// Compressed codec relative to a clause: round j picks among available
// literals not in the restricted clause; radix 2|E| - w - j.
struct EdgeBadSpace {
  int nedges = 0, t = 0, w = 0;

  std::vector<uint64_t> radixes() const;
  bool feasible() const;
  BigUint size() const;
  uint64_t size_u64() const;
  uint64_t encode_digits(const std::vector<uint64_t>& digits) const;
  std::vector<uint64_t> decode_digits(uint64_t code) const;
};

std::optional<uint64_t> edge_bad_to_seq(const Clause& c, uint64_t bad_code,
                                        const EdgeSeqSpace& seq, const EdgeBadSpace& bad);
std::optional<uint64_t> edge_seq_to_bad(const Clause& c, uint64_t seq_code,
                                        const EdgeSeqSpace& seq, const EdgeBadSpace& bad);

CountingCheck tseitin_union_bound(int nedges, int t, int w, uint64_t L);

}  // namespace rfl
