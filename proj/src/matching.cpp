#include "refuterlab/matching.hpp"

#include <limits>
#include <queue>

namespace rfl {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const BipartiteGraph& g;
  std::vector<int> dist, ml, mr;

  explicit HopcroftKarp(const BipartiteGraph& g)
      : g(g), dist(g.nleft), ml(g.nleft, -1), mr(g.nright, -1) {}

  bool bfs() {
    std::queue<int> q;
    for (int u = 0; u < g.nleft; ++u) {
      if (ml[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    bool reachable = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        int w = mr[v];
        if (w < 0) {
          reachable = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable;
  }

  bool dfs(int u) {
    for (int v : g.adj[u]) {
      int w = mr[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        ml[u] = v;
        mr[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }
};

}  // namespace

MatchingResult max_matching(const BipartiteGraph& g) {
  HopcroftKarp hk(g);
  int total = 0;
  while (hk.bfs())
    for (int u = 0; u < g.nleft; ++u)
      if (hk.ml[u] < 0 && hk.dfs(u)) ++total;
  return {total, hk.ml, hk.mr};
}

bool has_left_perfect_matching(const BipartiteGraph& g) {
  return max_matching(g).size == g.nleft;
}

}  // namespace rfl
