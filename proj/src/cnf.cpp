#include "reluregions/cnf.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

#include "reluregions/errors.hpp"

namespace reluregions {

bool CnfFormula::satisfied_by(const std::vector<uint8_t>& assignment) const {
  if (static_cast<int>(assignment.size()) != num_vars) {
    throw ValidationError("assignment has wrong number of variables");
  }
  for (const Clause& cl : clauses) {
    bool sat = false;
    for (int v : cl.pos) {
      if (assignment[v - 1]) {
        sat = true;
        break;
      }
    }
    if (!sat) {
      for (int v : cl.neg) {
        if (!assignment[v - 1]) {
          sat = true;
          break;
        }
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool CnfFormula::brute_force_satisfiable() const {
  if (num_vars > 30) throw ValidationError("brute_force_satisfiable: too many variables");
  std::vector<uint8_t> assignment(num_vars);
  for (std::uint64_t mask = 0; mask < (1ULL << num_vars); ++mask) {
    for (int i = 0; i < num_vars; ++i) assignment[i] = (mask >> i) & 1;
    if (satisfied_by(assignment)) return true;
  }
  return false;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula cnf;
  int declared_clauses = -1;
  std::string line;
  bool have_header = false;
  std::vector<long> current;  // literals of the clause being read
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first == "c") continue;    // comment
    if (first == "p") {
      if (have_header) throw ParseError(where + ": duplicate DIMACS header");
      std::string fmt;
      long nv = -1, nc = -1;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf") {
        throw ParseError(where + ": expected 'p cnf <vars> <clauses>'");
      }
      if (nv < 1 || nv > 1'000'000) throw ParseError(where + ": variable count out of range");
      if (nc < 0) throw ParseError(where + ": negative clause count");
      cnf.num_vars = static_cast<int>(nv);
      declared_clauses = static_cast<int>(nc);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(where + ": clause data before the 'p cnf' header");
    // Literal data; `first` is part of it.
    std::istringstream body(line);
    long lit;
    while (body >> lit) {
      if (lit == 0) {
        // End of clause: split, deduplicate, reject tautologies.
        std::set<int> pos, neg;
        for (long l : current) {
          if (l > 0) {
            pos.insert(static_cast<int>(l));
          } else {
            neg.insert(static_cast<int>(-l));
          }
        }
        for (int v : pos) {
          if (neg.count(v)) {
            throw ParseError(where + ": tautological clause (contains both " +
                             std::to_string(v) + " and -" + std::to_string(v) + ")");
          }
        }
        Clause cl;
        cl.pos.assign(pos.begin(), pos.end());
        cl.neg.assign(neg.begin(), neg.end());
        cnf.clauses.push_back(std::move(cl));
        current.clear();
      } else {
        long v = lit > 0 ? lit : -lit;
        if (v > cnf.num_vars) {
          throw ParseError(where + ": literal " + std::to_string(lit) +
                           " exceeds declared variable count " + std::to_string(cnf.num_vars));
        }
        current.push_back(lit);
      }
    }
    if (!body.eof()) throw ParseError(where + ": unreadable literal");
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("unterminated clause (missing trailing 0)");
  if (declared_clauses >= 0 && cnf.num_clauses() != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses but " +
                     std::to_string(cnf.num_clauses()) + " were read");
  }
  return cnf;
}

std::string to_dimacs(const CnfFormula& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << " " << cnf.num_clauses() << "\n";
  for (const Clause& cl : cnf.clauses) {
    for (int v : cl.pos) out << v << " ";
    for (int v : cl.neg) out << -v << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace reluregions
