#include "refuterlab/cnf.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rfl {

int Cnf::width() const {
  int w = 0;
  for (const auto& c : clauses) w = std::max(w, c.width());
  return w;
}

bool Cnf::eval(const std::vector<bool>& assignment) const {
  return !falsified_clause(assignment).has_value();
}

std::optional<int> Cnf::falsified_clause(const std::vector<bool>& assignment) const {
  for (int i = 0; i < (int)clauses.size(); ++i) {
    bool sat = false;
    for (Lit l : clauses[i].lits) {
      int v = var_of(l);
      if (v > (int)assignment.size()) throw std::out_of_range("assignment too short");
      if (assignment[v - 1] == positive(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return i;
  }
  return std::nullopt;
}

Cnf restrict_cnf(const Cnf& f, const Restriction& rho) {
  Cnf out;
  out.nvars = f.nvars;
  for (const auto& c : f.clauses) {
    RestrictedClause rc = restrict_clause(c, rho);
    if (!rc.killed) out.clauses.push_back(rc.clause);
  }
  return out;
}

std::string to_dimacs(const Cnf& f) {
  std::ostringstream os;
  os << "p cnf " << f.nvars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (Lit l : c.lits) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

Cnf parse_dimacs(std::istream& in) {
  Cnf f;
  std::string line;
  bool header = false;
  std::vector<Lit> cur;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream is(line);
      std::string p, cnf;
      int nc;
      if (!(is >> p >> cnf >> f.nvars >> nc) || cnf != "cnf")
        throw std::runtime_error("bad dimacs header");
      header = true;
      continue;
    }
    std::istringstream is(line);
    Lit l;
    while (is >> l) {
      if (l == 0) {
        f.clauses.push_back(Clause(cur));
        cur.clear();
      } else {
        cur.push_back(l);
        f.nvars = std::max(f.nvars, var_of(l));
      }
    }
  }
  if (!cur.empty()) f.clauses.push_back(Clause(cur));
  if (!header && f.clauses.empty()) throw std::runtime_error("empty dimacs input");
  return f;
}

Cnf read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs_file(const Cnf& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << to_dimacs(f);
}

}  // namespace rfl
