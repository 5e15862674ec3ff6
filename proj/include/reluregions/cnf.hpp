#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace reluregions {

/// One clause as disjoint sets of 1-based variable indices: `pos` holds the
/// variables appearing positively, `neg` those appearing negated.  Both are
/// sorted ascending.
struct Clause {
  std::vector<int> pos;
  std::vector<int> neg;

  int size() const { return static_cast<int>(pos.size() + neg.size()); }
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }

  /// True when the assignment (bit i-1 = variable i) satisfies every clause.
  bool satisfied_by(const std::vector<uint8_t>& assignment) const;

  /// Exhaustive satisfiability test, O(2^n); intended for small instances
  /// and test oracles.  Throws ValidationError above 30 variables.
  bool brute_force_satisfiable() const;
};

/// Parses DIMACS CNF: comment lines `c ...`, a `p cnf <vars> <clauses>`
/// header, then clauses as 0-terminated literal lists.  Duplicate literals
/// within a clause are dropped; a clause containing both x and -x is
/// rejected (ParseError), as are out-of-range literals and malformed
/// headers.  Requires at least one variable.
CnfFormula parse_dimacs(const std::string& text);
CnfFormula parse_dimacs(std::istream& in);

/// Serializes back to DIMACS (positive literals first within each clause).
std::string to_dimacs(const CnfFormula& cnf);

}  // namespace reluregions
