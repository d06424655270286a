#pragma once

#include <vector>

namespace rfl {

// Maximum bipartite matching (Hopcroft-Karp). adj[u] lists right-side
// neighbours of left vertex u.
struct BipartiteGraph {
  int nleft = 0, nright = 0;
  std::vector<std::vector<int>> adj;

  explicit BipartiteGraph(int nl = 0, int nr = 0) : nleft(nl), nright(nr), adj(nl) {}
  void add_edge(int u, int v) { adj[u].push_back(v); }
};

struct MatchingResult {
  int size = 0;
  std::vector<int> match_left;   // right partner of each left vertex, -1 if none
  std::vector<int> match_right;  // left partner of each right vertex, -1 if none
};

MatchingResult max_matching(const BipartiteGraph& g);

// Whether every left vertex can be matched.
bool has_left_perfect_matching(const BipartiteGraph& g);

}  // namespace rfl
