#include <random>

#include "doctest.h"
#include "refuterlab/cri.hpp"
#include "refuterlab/formulas.hpp"

using namespace rfl;

namespace {

// ---- independent brute-force oracles: enumerate the critical assignments
// themselves instead of testing matchings --------------------------------

// all injective maps of [n+1] \ {l} onto [n]
void each_matching(int n, int l, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> holes(n);
  for (int j = 0; j < n; ++j) holes[j] = j;
  std::sort(holes.begin(), holes.end());
  do {
    std::vector<int> assign(n + 1, -1);  // pigeon -> hole
    int at = 0;
    for (int i = 0; i <= n; ++i)
      if (i != l) assign[i] = holes[at++];
    fn(assign);
  } while (std::next_permutation(holes.begin(), holes.end()));
}

// evaluate a clause over EPHP variables under a critical assignment given by
// a matching and free extension bits for pigeon l
bool ephp_clause_falsified(int n, const Clause& c, const std::vector<int>& assign, int l,
                           uint32_t free_y) {
  for (Lit lit : c.lits) {
    int v = var_of(lit) - 1;
    bool value;
    if (v < (n + 1) * n) {
      int i = v / n, j = v % n;
      value = assign[i] == j;
    } else {
      v -= (n + 1) * n;
      int i = v / (n + 1), j = v % (n + 1);
      if (i == l)
        value = (free_y >> j) & 1;
      else
        value = assign[i] < j && assign[i] >= 0;
    }
    if (value == positive(lit)) return false;  // literal satisfied
  }
  return true;
}

CriResult cri_ephp_oracle(int n, const Clause& c) {
  CriResult r;
  for (int l = 0; l <= n; ++l) {
    bool crit = false;
    each_matching(n, l, [&](const std::vector<int>& assign) {
      if (crit) return;
      for (uint32_t ys = 0; ys < (uint32_t(1) << (n + 1)) && !crit; ++ys)
        if (ephp_clause_falsified(n, c, assign, l, ys)) crit = true;
    });
    if (crit) r.critical_set.push_back(l);
  }
  r.value = (int)r.critical_set.size();
  return r;
}

CriResult cri_mono_oracle(int m, int n, const Clause& c) {
  Clause mc = mono(c, n);
  CriResult r;
  for (int l = 0; l < m; ++l) {
    bool crit = false;
    each_matching(n, l, [&](const std::vector<int>& assign) {
      if (crit) return;
      for (Lit lit : mc.lits) {
        int v = var_of(lit) - 1;
        int i = v / n, j = v % n;
        if (assign[i] == j) return;  // positive literal satisfied
      }
      crit = true;
    });
    if (crit) r.critical_set.push_back(l);
  }
  r.value = (int)r.critical_set.size();
  return r;
}

CriResult cri_tseitin_oracle(const Graph& g, const std::vector<bool>& tau, const Clause& c) {
  auto inc = g.incidence();
  CriResult r;
  for (int v = 0; v < g.n; ++v) {
    bool crit = false;
    for (uint32_t bits = 0; bits < (uint32_t(1) << g.m()) && !crit; ++bits) {
      // clause must be falsified
      bool fals = true;
      for (Lit lit : c.lits)
        if ((bool)((bits >> (var_of(lit) - 1)) & 1) == positive(lit)) fals = false;
      if (!fals) continue;
      // exactly vertex v's parity broken
      bool ok = true;
      for (int u = 0; u < g.n && ok; ++u) {
        bool parity = false;
        for (int e : inc[u]) parity ^= (bits >> e) & 1;
        if (u == v ? parity == tau[u] : parity != tau[u]) ok = false;
      }
      if (ok) crit = true;
    }
    if (crit) r.critical_set.push_back(v);
  }
  r.value = (int)r.critical_set.size();
  return r;
}

std::vector<Clause> clauses_up_to_width(int nvars, int w) {
  std::vector<Clause> out;
  out.push_back(Clause());
  std::vector<Clause> frontier = {Clause()};
  for (int round = 0; round < w; ++round) {
    std::vector<Clause> next;
    for (const auto& c : frontier) {
      int start = c.lits.empty() ? 1 : var_of(c.lits.back()) + 1;
      for (int v = start; v <= nvars; ++v)
        for (Lit l : {v, -v}) {
          Clause c2 = c;
          c2.lits.push_back(l);
          next.push_back(c2);
          out.push_back(c2);
        }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("ephp cri anchors") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(cri_ephp(n, Clause()).value == n + 1);
    Cnf f = gen_ephp(n);
    for (const auto& ax : f.clauses) CHECK(cri_ephp(n, ax).value <= 1);
  }
  // n=2, C = !y_{0,0}: only pigeon 0 is critical
  auto r = cri_ephp(2, make_clause({-ephp_y(0, 0, 2)}));
  CHECK(r.value == 1);
  CHECK(r.critical_set == std::vector<int>({0}));
  // tautologies admit no falsifying assignment
  CHECK(cri_ephp(2, make_clause({ephp_x(0, 0, 2), -ephp_x(0, 0, 2)})).value == 0);
}

TEST_CASE("ephp cri agrees with the assignment-enumeration oracle, width <= 2") {
  int n = 2;
  for (const auto& c : clauses_up_to_width((n + 1) * n + (n + 1) * (n + 1), 2)) {
    CriResult fast = cri_ephp(n, c);
    CriResult sparse = cri_ephp_sparse(n, c);
    CriResult slow = cri_ephp_oracle(n, c);
    CHECK(fast.critical_set == slow.critical_set);
    CHECK(sparse.critical_set == slow.critical_set);
  }
}

TEST_CASE("ephp sparse path agrees on random width-3 clauses at n=3") {
  int n = 3;
  int nvars = (n + 1) * n + (n + 1) * (n + 1);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    Clause c;
    for (int k = 0; k < 3; ++k) {
      int v = 1 + (int)(rng() % nvars);
      c.lits.push_back(rng() % 2 ? v : -v);
    }
    c.canonicalize();
    CHECK(cri_ephp_sparse(n, c).critical_set == cri_ephp(n, c).critical_set);
  }
}

TEST_CASE("mono cri anchors and oracle agreement") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(cri_mono_php(n + 1, n, Clause()).value == n + 1);
    Cnf f = gen_php(n + 1, n);
    // pigeon axioms measure 1; monotonized hole axioms measure exactly 2
    // (either endpoint pigeon can be the unmatched one)
    for (int i = 0; i <= n; ++i) CHECK(cri_mono_php(n + 1, n, f.clauses[i]).value <= 1);
    for (size_t i = n + 1; i < f.clauses.size(); ++i)
      CHECK(cri_mono_php(n + 1, n, f.clauses[i]).value == 2);
  }
  int n = 2;
  for (const auto& c : clauses_up_to_width((n + 1) * n, 2)) {
    CHECK(cri_mono_php(n + 1, n, c).critical_set == cri_mono_oracle(n + 1, n, c).critical_set);
  }
  // spec example: n=2, C = mono(!x_{0,0}) = (x_{0,1})
  auto r = cri_mono_php(3, 2, make_clause({-php_var(0, 0, 2)}));
  CHECK(r.critical_set == cri_mono_oracle(3, 2, make_clause({-php_var(0, 0, 2)})).critical_set);
}

TEST_CASE("tseitin cri anchors and oracle agreement") {
  Graph c6 = cycle_graph(6);
  std::vector<bool> tau(6, false);
  tau[0] = true;
  CHECK(cri_tseitin(c6, tau, Clause()).value == 6);

  Cnf f = gen_tseitin(c6, tau);
  for (const auto& ax : f.clauses) CHECK(cri_tseitin(c6, tau, ax).value == 1);

  CHECK(cri_tseitin(c6, tau, make_clause({1, -1})).value == 0);

  for (const auto& c : clauses_up_to_width(6, 2)) {
    CHECK(cri_tseitin(c6, tau, c).critical_set == cri_tseitin_oracle(c6, tau, c).critical_set);
  }
}

TEST_CASE("tseitin cri on K4 against the oracle, width <= 2") {
  Graph k4 = complete_graph(4);
  std::vector<bool> tau(4, false);
  tau[1] = true;
  for (const auto& c : clauses_up_to_width(6, 2)) {
    CHECK(cri_tseitin(k4, tau, c).critical_set == cri_tseitin_oracle(k4, tau, c).critical_set);
  }
}

TEST_CASE("subadditivity of cri along valid steps") {
  // resolve random pairs of narrow clauses and compare measures
  int n = 3;
  int nvars = (n + 1) * n + (n + 1) * (n + 1);
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 300; ++trial) {
    int pivot = 1 + (int)(rng() % nvars);
    Clause a = make_clause({pivot}), b = make_clause({-pivot});
    for (int k = 0; k < 2; ++k) {
      int v = 1 + (int)(rng() % nvars);
      if (v != pivot) a.lits.push_back(rng() % 2 ? v : -v);
      int u = 1 + (int)(rng() % nvars);
      if (u != pivot) b.lits.push_back(rng() % 2 ? u : -u);
    }
    a.canonicalize();
    b.canonicalize();
    Clause resolvent = clause_union(a.without(pivot), b.without(-pivot));
    ++checked;
    CHECK(cri_ephp(n, resolvent).value <= cri_ephp(n, a).value + cri_ephp(n, b).value);
    // weakening never increases the measure
    Clause wider = resolvent;
    wider.lits.push_back(rng() % 2 ? 1 : -1);
    wider.canonicalize();
    CHECK(cri_ephp(n, wider).value <= cri_ephp(n, resolvent).value);
  }
}

TEST_CASE("no mid-band cri for narrow EPHP clauses") {
  // width < n/3 clauses never land in [n/3, 2n/3]
  for (int n : {6, 9}) {
    int nvars = (n + 1) * n + (n + 1) * (n + 1);
    int cap = (n + 2) / 3 - 1;  // width < n/3
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
      Clause c;
      int w = cap == 0 ? 0 : (int)(rng() % (cap + 1));
      for (int k = 0; k < w; ++k) {
        int v = 1 + (int)(rng() % nvars);
        c.lits.push_back(rng() % 2 ? v : -v);
      }
      c.canonicalize();
      int value = cri_ephp_sparse(n, c).value;
      bool mid = 3 * value >= n && 3 * value <= 2 * n;
      CHECK(!mid);
    }
  }
}

TEST_CASE("monotone width bound") {
  std::mt19937_64 rng(23);
  for (int n : {4, 6}) {
    for (int trial = 0; trial < 500; ++trial) {
      Clause c;
      int w = 1 + (int)(rng() % 5);
      for (int k = 0; k < w; ++k) {
        int v = 1 + (int)(rng() % ((n + 1) * n));
        c.lits.push_back(rng() % 2 ? v : -v);
      }
      c.canonicalize();
      Clause mc = mono(c, n);
      int cri = cri_mono_php(n + 1, n, c).value;
      CHECK(mc.width() >= cri * (n - cri));
    }
  }
}
