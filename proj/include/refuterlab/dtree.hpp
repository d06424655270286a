#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rfl {

// A decision tree over boolean variables with integer leaves. Node 0 is the
// root of a non-trivial tree; a tree may also be a bare leaf.
struct DTree {
  struct Node {
    bool is_leaf = false;
    int var = 0;       // queried variable (>= 1)
    int lo = -1;       // child when the variable is 0
    int hi = -1;       // child when the variable is 1
    int64_t leaf = 0;  // value when is_leaf
  };
  std::vector<Node> nodes;
  int root = 0;

  static DTree leaf(int64_t value);
  // convenience: query one variable, two leaves
  static DTree single(int var, int64_t if0, int64_t if1);

  int64_t eval(const std::function<bool(int)>& read) const;
  // evaluation that also records the queried (var, value) pairs
  int64_t eval_path(const std::function<bool(int)>& read,
                    std::vector<std::pair<int, bool>>& path) const;
  int depth() const;

  // all root-to-leaf paths as (assignments, leaf value)
  struct Path {
    std::vector<std::pair<int, bool>> fixed;
    int64_t leaf = 0;
  };
  std::vector<Path> paths() const;
};

// JSON (de)serialization: nested {"var":v,"lo":...,"hi":...} / {"leaf":n}.
std::string dtree_to_json(const DTree& t);
DTree dtree_from_json(const std::string& text);

}  // namespace rfl
