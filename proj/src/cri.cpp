#include "refuterlab/cri.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "refuterlab/formulas.hpp"
#include "refuterlab/gf2.hpp"
#include "refuterlab/matching.hpp"

namespace rfl {

Clause mono(const Clause& c, int n) {
  std::vector<int> holes(n);
  for (int j = 0; j < n; ++j) holes[j] = j;
  return mono_sub(c, n, holes);
}

Clause mono_sub(const Clause& c, int n_full, const std::vector<int>& holes) {
  Clause out;
  for (Lit l : c.lits) {
    int v = var_of(l) - 1;
    int i = v / n_full, j = v % n_full;
    if (positive(l)) {
      out.lits.push_back(php_var(i, j, n_full));
    } else {
      for (int j2 : holes)
        if (j2 != j) out.lits.push_back(php_var(i, j2, n_full));
    }
  }
  out.canonicalize();
  return out;
}

namespace {

// Decoded EPHP literal.
struct EphpLit {
  bool ext;  // y variable
  int i, j;
  bool pos;
};

EphpLit decode_ephp(Lit l, int n) {
  int v = var_of(l) - 1;
  EphpLit e;
  e.pos = positive(l);
  if (v < (n + 1) * n) {
    e.ext = false;
    e.i = v / n;
    e.j = v % n;
  } else {
    v -= (n + 1) * n;
    e.ext = true;
    e.i = v / (n + 1);
    e.j = v % (n + 1);
    if (e.i > n) throw std::invalid_argument("not an EPHP variable");
  }
  return e;
}

// Per-pigeon hole constraints implied by falsifying an EPHP clause:
// allowed[i][j] says whether pigeon i may sit in hole j; forced_conflict
// flags direct impossibilities for the candidate pigeon l.
struct EphpConstraints {
  int n;
  std::vector<std::vector<bool>> allowed;  // (n+1) x n
  bool contradiction = false;

  explicit EphpConstraints(int n) : n(n), allowed(n + 1, std::vector<bool>(n, true)) {}

  void drop(int i, int j) { allowed[i][j] = false; }
};

// Apply the literal rules for falsifying C, pigeon l excluded. Returns false
// when no l-critical assignment can falsify C.
bool build_constraints(int n, const Clause& c, int l, EphpConstraints& con) {
  if (c.is_tautology()) return false;
  for (Lit lit : c.lits) {
    EphpLit e = decode_ephp(lit, n);
    if (e.i == l) {
      if (!e.ext) {
        if (!e.pos) return false;  // needs x_{l,j} = 1, impossible
        // positive x_{l,j} is automatically false
      }
      // y_{l,*} is free: falsifiable unless C is tautological on it, which
      // canonicalization already rules out (both polarities = tautology)
      continue;
    }
    if (!e.ext) {
      if (e.pos) {
        con.drop(e.i, e.j);  // x_{i,j} must be 0
      } else {
        // x_{i,j} must be 1: pigeon i pinned to hole j, hole j closed to others
        for (int j2 = 0; j2 < n; ++j2)
          if (j2 != e.j) con.drop(e.i, j2);
        for (int i2 = 0; i2 <= n; ++i2)
          if (i2 != e.i) con.drop(i2, e.j);
      }
    } else {
      // y_{i,j} = [pigeon i sits in a hole with index < j]
      if (e.pos) {
        for (int j2 = 0; j2 < e.j; ++j2) con.drop(e.i, j2);  // y = 0: hole >= j
      } else {
        for (int j2 = e.j; j2 < n; ++j2) con.drop(e.i, j2);  // y = 1: hole < j
      }
    }
  }
  return true;
}

bool ephp_critical(int n, const Clause& c, int l) {
  EphpConstraints con(n);
  if (!build_constraints(n, c, l, con)) return false;
  BipartiteGraph g(n, n);
  int row = 0;
  for (int i = 0; i <= n; ++i) {
    if (i == l) continue;
    for (int j = 0; j < n; ++j)
      if (con.allowed[i][j]) g.add_edge(row, j);
    ++row;
  }
  return has_left_perfect_matching(g);
}

}  // namespace

CriResult cri_ephp(int n, const Clause& c) {
  CriResult r;
  for (int l = 0; l <= n; ++l)
    if (ephp_critical(n, c, l)) r.critical_set.push_back(l);
  r.value = (int)r.critical_set.size();
  return r;
}

CriResult cri_ephp_sparse(int n, const Clause& c) {
  CriResult r;
  if (c.is_tautology()) return r;
  std::set<int> involved;
  for (Lit lit : c.lits) involved.insert(decode_ephp(lit, n).i);

  // Negative x literals pin a pigeon to a hole; peel those pairs off first so
  // the rest of the instance only carries per-pigeon row deletions.
  std::map<int, int> forced;      // pigeon -> hole
  std::map<int, int> hole_owner;  // hole -> pigeon
  for (Lit lit : c.lits) {
    EphpLit e = decode_ephp(lit, n);
    if (e.ext || e.pos) continue;
    auto it = forced.find(e.i);
    if (it != forced.end() && it->second != e.j) return r;  // empty row everywhere
    auto ho = hole_owner.find(e.j);
    if (ho != hole_owner.end() && ho->second != e.i) return r;  // hole doubly pinned
    forced[e.i] = e.j;
    hole_owner[e.j] = e.i;
  }
  // forced pigeons must be consistent with their own x/y literals
  for (Lit lit : c.lits) {
    EphpLit e = decode_ephp(lit, n);
    auto it = forced.find(e.i);
    if (it == forced.end()) continue;
    int hole = it->second;
    if (!e.ext && e.pos && e.j == hole) return r;            // x_{i,hole} must be 0 and 1
    if (e.ext && e.pos && hole < e.j) return r;              // y = 0 forces hole >= j
    if (e.ext && !e.pos && hole >= e.j) return r;            // y = 1 forces hole < j
  }

  // Pigeons not involved in C are interchangeable; decide one representative.
  int representative = -1;
  for (int i = 0; i <= n && representative < 0; ++i)
    if (!involved.count(i)) representative = i;

  auto critical_sparse = [&](int l) -> bool {
    if (forced.count(l)) return false;  // l's row is empty by definition
    for (Lit lit : c.lits) {
      EphpLit e = decode_ephp(lit, n);
      if (e.i == l && !e.ext && !e.pos) return false;
    }
    // remaining holes after peeling the pinned pairs
    std::vector<int> holes;
    for (int j = 0; j < n; ++j)
      if (!hole_owner.count(j)) holes.push_back(j);
    std::vector<int> small;  // involved, unforced, not l
    for (int i : involved)
      if (i != l && !forced.count(i)) small.push_back(i);
    const int t1 = (int)small.size();
    // allowed holes per small pigeon, from positive x and y literals
    std::vector<std::vector<int>> rows;
    std::vector<int> tight;
    for (int i : small) {
      std::vector<int> row;
      for (int j : holes) {
        bool ok = true;
        for (Lit lit : c.lits) {
          EphpLit e = decode_ephp(lit, n);
          if (e.i != i) continue;
          if (!e.ext && e.pos && e.j == j) ok = false;
          if (e.ext && e.pos && j < e.j) ok = false;
          if (e.ext && !e.pos && j >= e.j) ok = false;
        }
        if (ok) row.push_back(j);
        if ((int)row.size() > t1) break;  // plenty of room: always matchable
      }
      if (row.empty()) return false;
      if ((int)row.size() <= t1) {
        tight.push_back((int)rows.size());
        rows.push_back(std::move(row));
      } else {
        rows.push_back({});
      }
    }
    // everyone outside `tight` has more options than there are contenders;
    // a perfect matching exists iff the tight pigeons can be matched
    std::set<int> hole_set;
    for (int t : tight)
      for (int j : rows[t]) hole_set.insert(j);
    std::vector<int> hole_ids(hole_set.begin(), hole_set.end());
    std::map<int, int> pos;
    for (int b = 0; b < (int)hole_ids.size(); ++b) pos[hole_ids[b]] = b;
    BipartiteGraph g((int)tight.size(), (int)hole_ids.size());
    for (int a = 0; a < (int)tight.size(); ++a)
      for (int j : rows[tight[a]]) g.add_edge(a, pos[j]);
    return has_left_perfect_matching(g);
  };

  bool rep_critical = representative >= 0 && critical_sparse(representative);
  for (int l = 0; l <= n; ++l) {
    bool crit = involved.count(l) ? critical_sparse(l) : rep_critical;
    if (crit) r.critical_set.push_back(l);
  }
  r.value = (int)r.critical_set.size();
  return r;
}

CriResult cri_mono_php(int m, int n, const Clause& c) {
  std::vector<int> pigeons(m), holes(n);
  for (int i = 0; i < m; ++i) pigeons[i] = i;
  for (int j = 0; j < n; ++j) holes[j] = j;
  return cri_mono_php_sub(pigeons, holes, n, c);
}

CriResult cri_mono_php_sub(const std::vector<int>& pigeons, const std::vector<int>& holes,
                           int n_full, const Clause& c) {
  CriResult r;
  Clause mc = mono_sub(c, n_full, holes);
  std::map<int, int> hole_pos;
  for (int b = 0; b < (int)holes.size(); ++b) hole_pos[holes[b]] = b;
  for (int l : pigeons) {
    BipartiteGraph g((int)pigeons.size() - 1, (int)holes.size());
    int row = 0;
    for (int i : pigeons) {
      if (i == l) continue;
      for (int j : holes) {
        if (!mc.has(php_var(i, j, n_full))) g.add_edge(row, hole_pos[j]);
      }
      ++row;
    }
    if (has_left_perfect_matching(g)) r.critical_set.push_back(l);
  }
  r.value = (int)r.critical_set.size();
  return r;
}

CriResult cri_tseitin(const Graph& g, const std::vector<bool>& tau, const Clause& c) {
  CriResult r;
  auto inc = g.incidence();
  const int m = g.m();
  for (int v = 0; v < g.n; ++v) {
    const auto& es = inc[v];
    int d = (int)es.size();
    bool critical = false;
    for (uint32_t pattern = 0; pattern < (uint32_t(1) << d) && !critical; ++pattern) {
      bool parity = false;
      for (int k = 0; k < d; ++k) parity ^= (pattern >> k) & 1;
      if (parity == tau[v]) continue;  // does not break v's constraint
      // fix edges around v to the pattern, and C's literals to false
      std::vector<int8_t> fixed(m, -1);
      bool consistent = true;
      for (int k = 0; k < d && consistent; ++k) {
        int bit = (pattern >> k) & 1;
        if (fixed[es[k]] >= 0 && fixed[es[k]] != bit) consistent = false;
        fixed[es[k]] = (int8_t)bit;
      }
      for (Lit lit : c.lits) {
        if (!consistent) break;
        int e = var_of(lit) - 1;
        int want = positive(lit) ? 0 : 1;
        if (fixed[e] >= 0 && fixed[e] != want) consistent = false;
        fixed[e] = (int8_t)want;
      }
      if (!consistent) continue;
      // remaining parity constraints over the free edges
      Gf2System sys;
      sys.nvars = m;
      bool local_ok = true;
      for (int u = 0; u < g.n && local_ok; ++u) {
        if (u == v) continue;
        std::vector<int> frees;
        bool rhs = tau[u];
        for (int e : inc[u]) {
          if (fixed[e] >= 0)
            rhs = rhs ^ (fixed[e] == 1);
          else
            frees.push_back(e);
        }
        if (frees.empty() && rhs) local_ok = false;
        if (!frees.empty()) sys.add_equation(std::move(frees), rhs);
      }
      if (local_ok && gf2_solvable(sys)) critical = true;
    }
    if (critical) r.critical_set.push_back(v);
  }
  r.value = (int)r.critical_set.size();
  return r;
}

}  // namespace rfl
