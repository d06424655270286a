#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rfl {

// Literals use the DIMACS convention: +v / -v for variable v >= 1.
using Lit = int;

inline int var_of(Lit l) { return l > 0 ? l : -l; }
inline bool positive(Lit l) { return l > 0; }

// A clause is a canonically sorted, duplicate-free set of literals.
// Complementary pairs are representable (tautological clauses).
struct Clause {
  std::vector<Lit> lits;

  Clause() = default;
  explicit Clause(std::vector<Lit> ls) : lits(std::move(ls)) { canonicalize(); }

  void canonicalize();
  int width() const { return (int)lits.size(); }
  bool empty() const { return lits.empty(); }
  bool has(Lit l) const { return std::binary_search(lits.begin(), lits.end(), l, lit_less); }
  bool mentions_var(int v) const { return has(v) || has(-v); }
  bool is_tautology() const;
  bool subset_of(const Clause& other) const;
  Clause without(Lit l) const;
  bool operator==(const Clause& o) const { return lits == o.lits; }
  bool operator<(const Clause& o) const { return lits < o.lits; }

  std::string str() const;

  // Sort by variable id, negative literal first within a variable.
  static bool lit_less(Lit a, Lit b) {
    int va = var_of(a), vb = var_of(b);
    if (va != vb) return va < vb;
    return a < b;
  }
};

inline Clause make_clause(std::initializer_list<Lit> ls) { return Clause(std::vector<Lit>(ls)); }

// Union of two clauses as literal sets.
Clause clause_union(const Clause& a, const Clause& b);

// A partial assignment of values to variables.
struct Restriction {
  std::map<int, bool> vals;

  bool assigns(int v) const { return vals.count(v) != 0; }
  bool value(int v) const { return vals.at(v); }
  void set(int v, bool b) { vals[v] = b; }
  bool satisfies(Lit l) const { return assigns(var_of(l)) && value(var_of(l)) == positive(l); }
  bool falsifies(Lit l) const { return assigns(var_of(l)) && value(var_of(l)) != positive(l); }
};

struct RestrictedClause {
  bool killed = false;  // some literal satisfied
  Clause clause;        // falsified literals removed (meaningless when killed)
};

// Apply a restriction: KilledTrue when a literal is satisfied, otherwise
// drop the falsified literals.
RestrictedClause restrict_clause(const Clause& c, const Restriction& rho);

}  // namespace rfl
