#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reluregions/affine.hpp"

namespace reluregions {

enum class Rel { LE, GE, EQ };

/// One linear constraint  a . x  REL  b.
struct LinearConstraint {
  std::vector<Rational> a;
  Rational b = 0;
  Rel rel = Rel::LE;
};

struct ConstraintSystem {
  int dim = 0;
  std::vector<LinearConstraint> rows;
};

/// Builds the halfspace constraint f(x) >= 0 (resp. <= 0).
LinearConstraint ge_zero(const AffineFunction& f);
LinearConstraint le_zero(const AffineFunction& f);

/// Slack of an inequality as an affine function of x: nonnegative exactly on
/// the constraint's feasible side, zero exactly on its boundary.
AffineFunction slack_function(const LinearConstraint& c);

/// Counts LP solves and enforces an optional budget; shared by all solver
/// entry points.  With budget > 0, exceeding it raises ResourceLimitError.
struct LpContext {
  std::uint64_t solves = 0;
  std::uint64_t budget = 0;
  void charge();
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;  // meaningful for Optimal
  Point point;     // meaningful for Optimal
};

/// Maximizes f over the system exactly.  The solver runs a dictionary
/// simplex with Bland's rule (so it always terminates) over int64 fractions
/// and transparently re-solves with arbitrary precision when any
/// intermediate value leaves the int64 range.  Both scalar paths take the
/// same pivot sequence, so results are identical.
LpResult maximize(const ConstraintSystem& sys, const AffineFunction& f, LpContext* ctx = nullptr);

/// Some point of the solution set, or nullopt when the system is infeasible.
std::optional<Point> find_point(const ConstraintSystem& sys, LpContext* ctx = nullptr);

/// Decides whether sup { f(x) : x satisfies sys } > 0 and, if so, returns a
/// point with f(x) > 0.  Stops at the first simplex vertex with positive
/// objective rather than solving to optimality; unbounded improving rays are
/// turned into concrete points.
std::optional<Point> positive_point(const ConstraintSystem& sys, const AffineFunction& f,
                                    LpContext* ctx = nullptr);

/// Finds a point satisfying every row of `weak` plus, strictly, the slack of
/// each row listed in `strict_rows` (indices into weak.rows; EQ rows are not
/// allowed there).  Starts from `warm` when given (it must satisfy `weak`)
/// and repairs one strict row at a time by averaging toward a witness of
/// that row's positivity, which preserves all rows repaired so far.
std::optional<Point> strict_point(const ConstraintSystem& weak, const std::vector<int>& strict_rows,
                                  LpContext* ctx = nullptr, const Point* warm = nullptr);

/// Exact affine dimension of the solution set, or -1 when it is empty.
/// Implemented by driving the relative-interior refinement: every inequality
/// is either made strict by averaging witnesses or proven to hold with
/// equality everywhere; the dimension is then codim of the span of the tight
/// normals.
int polyhedron_dim(const ConstraintSystem& sys, LpContext* ctx = nullptr);

namespace detail {
/// Like polyhedron_dim, but may stop early once the dimension is provably
/// below `min_interesting` (the returned value is then some number smaller
/// than min_interesting, not necessarily the exact dimension).
int polyhedron_dim_capped(const ConstraintSystem& sys, int min_interesting, LpContext* ctx);
}  // namespace detail

}  // namespace reluregions
