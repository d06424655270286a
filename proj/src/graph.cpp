#include "refuterlab/graph.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rfl {

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n, 0);
  for (auto [u, v] : edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

bool Graph::regular(int d) const {
  for (int x : degrees())
    if (x != d) return false;
  return true;
}

bool Graph::connected() const {
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

std::vector<std::vector<int>> Graph::incidence() const {
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < m(); ++e) {
    inc[edges[e].first].push_back(e);
    inc[edges[e].second].push_back(e);
  }
  return inc;
}

Graph cycle_graph(int n) {
  Graph g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  return g;
}

Graph complete_graph(int n) {
  Graph g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  return g;
}

Graph barbell_graph(int block) {
  Graph g;
  g.n = 2 * block;
  for (int i = 0; i < block; ++i)
    for (int j = i + 1; j < block; ++j) {
      g.edges.push_back({i, j});
      g.edges.push_back({block + i, block + j});
    }
  g.edges.push_back({0, block});
  return g;
}

Graph torus_grid(int w, int h) {
  Graph g;
  g.n = w * h;
  auto id = [&](int x, int y) { return ((x + w) % w) + w * ((y + h) % h); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      g.edges.push_back({id(x, y), id(x + 1, y)});
      g.edges.push_back({id(x, y), id(x, y + 1)});
    }
  return g;
}

int expansion(const Graph& g) {
  if (g.n > 24) throw std::runtime_error("expansion: too many vertices");
  int best = std::numeric_limits<int>::max();
  for (uint32_t s = 1; s + 1 < (uint32_t(1) << g.n); ++s) {
    int size = __builtin_popcount(s);
    if (3 * size < g.n || 3 * size > 2 * g.n) continue;
    int cut = 0;
    for (auto [u, v] : g.edges)
      if (((s >> u) & 1) != ((s >> v) & 1)) ++cut;
    best = std::min(best, cut);
  }
  if (best == std::numeric_limits<int>::max()) best = 0;
  return best;
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  for (auto [u, v] : g.edges) os << u << " " << v << "\n";
  return os.str();
}

Graph graph_from_text(const std::string& text) {
  Graph g;
  std::istringstream is(text);
  int u, v;
  while (is >> u >> v) {
    g.edges.push_back({u, v});
    g.n = std::max({g.n, u + 1, v + 1});
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return graph_from_text(buf.str());
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << graph_to_text(g);
}

}  // namespace rfl
