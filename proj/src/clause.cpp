#include "refuterlab/clause.hpp"

#include <sstream>

namespace rfl {

void Clause::canonicalize() {
  std::sort(lits.begin(), lits.end(), lit_less);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

bool Clause::is_tautology() const {
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (var_of(lits[i]) == var_of(lits[i + 1])) return true;
  return false;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits.begin(), other.lits.end(), lits.begin(), lits.end(), lit_less);
}

Clause Clause::without(Lit l) const {
  Clause r;
  r.lits.reserve(lits.size());
  for (Lit x : lits)
    if (x != l) r.lits.push_back(x);
  return r;
}

std::string Clause::str() const {
  std::ostringstream os;
  if (lits.empty()) return "<bot>";
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) os << " ";
    os << lits[i];
  }
  return os.str();
}

Clause clause_union(const Clause& a, const Clause& b) {
  Clause r;
  r.lits.reserve(a.lits.size() + b.lits.size());
  std::merge(a.lits.begin(), a.lits.end(), b.lits.begin(), b.lits.end(),
             std::back_inserter(r.lits), Clause::lit_less);
  r.lits.erase(std::unique(r.lits.begin(), r.lits.end()), r.lits.end());
  return r;
}

RestrictedClause restrict_clause(const Clause& c, const Restriction& rho) {
  RestrictedClause out;
  for (Lit l : c.lits) {
    if (rho.satisfies(l)) {
      out.killed = true;
      out.clause = Clause();
      return out;
    }
    if (!rho.falsifies(l)) out.clause.lits.push_back(l);
  }
  return out;
}

}  // namespace rfl
