#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "refuterlab/clause.hpp"

namespace rfl {

struct Cnf {
  int nvars = 0;
  std::vector<Clause> clauses;

  int nclauses() const { return (int)clauses.size(); }
  int width() const;
  bool eval(const std::vector<bool>& assignment) const;  // assignment[v-1] for var v
  // Index of some clause falsified by the assignment, if any.
  std::optional<int> falsified_clause(const std::vector<bool>& assignment) const;
};

Cnf restrict_cnf(const Cnf& f, const Restriction& rho);

std::string to_dimacs(const Cnf& f);
Cnf parse_dimacs(std::istream& in);
Cnf read_dimacs_file(const std::string& path);
void write_dimacs_file(const Cnf& f, const std::string& path);

}  // namespace rfl
