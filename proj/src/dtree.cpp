#include "refuterlab/dtree.hpp"

#include "json.hpp"

namespace rfl {

using nlohmann::json;

DTree DTree::leaf(int64_t value) {
  DTree t;
  t.nodes.push_back({true, 0, -1, -1, value});
  t.root = 0;
  return t;
}

DTree DTree::single(int var, int64_t if0, int64_t if1) {
  DTree t;
  t.nodes.push_back({false, var, 1, 2, 0});
  t.nodes.push_back({true, 0, -1, -1, if0});
  t.nodes.push_back({true, 0, -1, -1, if1});
  t.root = 0;
  return t;
}

int64_t DTree::eval(const std::function<bool(int)>& read) const {
  std::vector<std::pair<int, bool>> path;
  return eval_path(read, path);
}

int64_t DTree::eval_path(const std::function<bool(int)>& read,
                         std::vector<std::pair<int, bool>>& path) const {
  int at = root;
  while (!nodes[at].is_leaf) {
    bool v = read(nodes[at].var);
    path.push_back({nodes[at].var, v});
    at = v ? nodes[at].hi : nodes[at].lo;
  }
  return nodes[at].leaf;
}

int DTree::depth() const {
  std::function<int(int)> rec = [&](int at) -> int {
    if (nodes[at].is_leaf) return 0;
    return 1 + std::max(rec(nodes[at].lo), rec(nodes[at].hi));
  };
  return rec(root);
}

std::vector<DTree::Path> DTree::paths() const {
  std::vector<Path> out;
  std::vector<std::pair<int, bool>> cur;
  std::function<void(int)> rec = [&](int at) {
    if (nodes[at].is_leaf) {
      out.push_back({cur, nodes[at].leaf});
      return;
    }
    cur.push_back({nodes[at].var, false});
    rec(nodes[at].lo);
    cur.back().second = true;
    rec(nodes[at].hi);
    cur.pop_back();
  };
  rec(root);
  return out;
}

namespace {

json node_to_json(const DTree& t, int at) {
  const auto& n = t.nodes[at];
  if (n.is_leaf) return json{{"leaf", n.leaf}};
  return json{{"var", n.var}, {"lo", node_to_json(t, n.lo)}, {"hi", node_to_json(t, n.hi)}};
}

int node_from_json(const json& j, DTree& t) {
  int at = (int)t.nodes.size();
  t.nodes.push_back({});
  if (j.contains("leaf")) {
    t.nodes[at].is_leaf = true;
    t.nodes[at].leaf = j.at("leaf").get<int64_t>();
    return at;
  }
  t.nodes[at].var = j.at("var").get<int>();
  int lo = node_from_json(j.at("lo"), t);
  int hi = node_from_json(j.at("hi"), t);
  t.nodes[at].lo = lo;
  t.nodes[at].hi = hi;
  return at;
}

}  // namespace

std::string dtree_to_json(const DTree& t) { return node_to_json(t, t.root).dump(); }

DTree dtree_from_json(const std::string& text) {
  json j = json::parse(text);
  DTree t;
  t.root = node_from_json(j, t);
  return t;
}

}  // namespace rfl
