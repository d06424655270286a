#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rfl {

// Undirected multigraph as an ordered edge list; vertex ids are 0-based.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int m() const { return (int)edges.size(); }
  std::vector<int> degrees() const;
  bool regular(int d) const;
  bool connected() const;
  std::vector<std::vector<int>> incidence() const;  // edge indices per vertex
};

Graph cycle_graph(int n);
Graph complete_graph(int n);
// Two complete blocks joined by a single bridge edge.
Graph barbell_graph(int block);
// w x h grid with wrap-around (torus); 4-regular when w,h >= 3.
Graph torus_grid(int w, int h);

// Minimum |E(S, V\S)| over balanced subsets (|V|/3 <= |S| <= 2|V|/3, by exact
// rational comparison). Exhaustive over subsets; |V| <= 24.
int expansion(const Graph& g);

// Edge-list text format, one "u v" per line.
std::string graph_to_text(const Graph& g);
Graph graph_from_text(const std::string& text);
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace rfl
