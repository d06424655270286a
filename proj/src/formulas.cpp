#include "refuterlab/formulas.hpp"

#include <random>
#include <stdexcept>

#include "refuterlab/matching.hpp"

namespace rfl {

Cnf gen_php(int m, int n) {
  if (!(m > n && n >= 1)) throw std::invalid_argument("gen_php: need m > n >= 1");
  Cnf f;
  f.nvars = m * n;
  for (int i = 0; i < m; ++i) {
    Clause c;
    for (int j = 0; j < n; ++j) c.lits.push_back(php_var(i, j, n));
    f.clauses.push_back(Clause(c.lits));
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      for (int i2 = i + 1; i2 < m; ++i2)
        f.clauses.push_back(make_clause({-php_var(i, j, n), -php_var(i2, j, n)}));
  return f;
}

Cnf gen_ephp(int n) {
  if (n < 1) throw std::invalid_argument("gen_ephp: need n >= 1");
  Cnf f;
  f.nvars = (n + 1) * n + (n + 1) * (n + 1);
  for (int i = 0; i <= n; ++i) {
    f.clauses.push_back(make_clause({-ephp_y(i, 0, n)}));
    for (int j = 0; j < n; ++j)
      f.clauses.push_back(
          make_clause({ephp_y(i, j, n), ephp_x(i, j, n), -ephp_y(i, j + 1, n)}));
    f.clauses.push_back(make_clause({ephp_y(i, n, n)}));
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= n; ++i)
      for (int i2 = i + 1; i2 <= n; ++i2)
        f.clauses.push_back(make_clause({-ephp_x(i, j, n), -ephp_x(i2, j, n)}));
  return f;
}

bool odd_weighted(const std::vector<bool>& tau) {
  bool acc = false;
  for (bool b : tau) acc ^= b;
  return acc;
}

Cnf gen_tseitin(const Graph& g, const std::vector<bool>& tau) {
  if ((int)tau.size() != g.n) throw std::invalid_argument("gen_tseitin: tau size mismatch");
  auto inc = g.incidence();
  for (int v = 0; v < g.n; ++v)
    if (inc[v].size() > 6) throw std::invalid_argument("gen_tseitin: degree > 6");
  Cnf f;
  f.nvars = g.m();
  for (int v = 0; v < g.n; ++v) {
    const auto& es = inc[v];
    int d = (int)es.size();
    for (uint32_t pattern = 0; pattern < (uint32_t(1) << d); ++pattern) {
      bool parity = false;
      for (int k = 0; k < d; ++k) parity ^= (pattern >> k) & 1;
      if (parity == tau[v]) continue;  // pattern satisfies the constraint
      Clause c;
      for (int k = 0; k < d; ++k) {
        int var = es[k] + 1;
        c.lits.push_back(((pattern >> k) & 1) ? -var : var);
      }
      f.clauses.push_back(Clause(c.lits));
    }
  }
  return f;
}

Cnf xor_lift(const Cnf& f) {
  if (f.width() > 12) throw std::invalid_argument("xor_lift: clause too wide");
  Cnf out;
  out.nvars = 2 * f.nvars;
  for (const auto& c : f.clauses) {
    int d = c.width();
    for (uint32_t r = 0; r < (uint32_t(1) << d); ++r) {
      Clause lifted;
      for (int k = 0; k < d; ++k) {
        Lit l = c.lits[k];
        int z = var_of(l);
        int b = positive(l) ? 1 : 0;
        int rk = (r >> k) & 1;
        lifted.lits.push_back((rk ^ 1) ? xor_x(z) : -xor_x(z));
        lifted.lits.push_back((b ^ rk) ? xor_y(z) : -xor_y(z));
      }
      out.clauses.push_back(Clause(lifted.lits));
    }
  }
  return out;
}

Cnf gen_random_kcnf(int k, int n, int m, uint64_t seed) {
  if (k > n) throw std::invalid_argument("gen_random_kcnf: k > n");
  std::mt19937_64 rng(seed);
  // explicit rejection sampling keeps the output identical across platforms
  auto draw = [&rng](uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    return v % bound;
  };
  Cnf f;
  f.nvars = n;
  std::vector<int> vars;
  for (int c = 0; c < m; ++c) {
    // uniform k-subset of variables, then uniform signs
    vars.clear();
    for (int v = 1; v <= n; ++v) vars.push_back(v);
    Clause cl;
    for (int pick = 0; pick < k; ++pick) {
      size_t idx = (size_t)draw(vars.size());
      int v = vars[idx];
      vars.erase(vars.begin() + idx);
      cl.lits.push_back(draw(2) ? v : -v);
    }
    f.clauses.push_back(Clause(cl.lits));
  }
  return f;
}

HypergraphView HypergraphView::of_cnf(const Cnf& f) {
  HypergraphView h;
  h.nvertices = f.nvars;
  for (const auto& c : f.clauses) {
    std::vector<int> e;
    for (Lit l : c.lits) e.push_back(var_of(l));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    h.edges.push_back(std::move(e));
  }
  return h;
}

std::vector<int> boundary(const HypergraphView& h, const std::vector<int>& edge_subset) {
  std::vector<int> count(h.nvertices + 1, 0);
  for (int e : edge_subset)
    for (int v : h.edges.at(e)) ++count[v];
  std::vector<int> out;
  for (int v = 1; v <= h.nvertices; ++v)
    if (count[v] == 1) out.push_back(v);
  return out;
}

bool has_sdr_disjoint(const std::vector<std::vector<int>>& family, const std::set<int>& forbidden) {
  // collect ground elements
  std::vector<int> ground;
  for (const auto& s : family)
    for (int x : s)
      if (!forbidden.count(x)) ground.push_back(x);
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  BipartiteGraph g((int)family.size(), (int)ground.size());
  for (int i = 0; i < (int)family.size(); ++i)
    for (int x : family[i]) {
      if (forbidden.count(x)) continue;
      auto it = std::lower_bound(ground.begin(), ground.end(), x);
      g.add_edge(i, (int)(it - ground.begin()));
    }
  return has_left_perfect_matching(g);
}

bool property_P(const HypergraphView& h, double a) {
  int m = (int)h.edges.size();
  if (m > 20) throw std::invalid_argument("property_P: too many edges");
  for (uint32_t s = 1; s < (uint32_t(1) << m); ++s) {
    int size = __builtin_popcount(s);
    if ((double)size > a * h.nvertices) continue;
    std::vector<int> subset;
    for (int e = 0; e < m; ++e)
      if ((s >> e) & 1) subset.push_back(e);
    if (2 * (int)boundary(h, subset).size() < size) return false;
  }
  return true;
}

}  // namespace rfl
