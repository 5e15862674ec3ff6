#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reluregions/census.hpp"
#include "reluregions/network.hpp"
#include "reluregions/rational.hpp"

namespace reluregions {

// Independent verification tools: an exact sweep census for one-dimensional
// inputs, randomized lower bounds in any dimension, and closed-form counts
// for the generated network families.  Nothing here runs an LP or shares
// code with the census engine, so agreement between the two is meaningful.

/// A continuous piecewise linear function of one variable in maximal-piece
/// form: pieces[i] applies on the i-th interval of the partition given by
/// the strictly increasing breakpoints, adjacent pieces are distinct
/// functions, and they agree at the shared breakpoint.
struct PiecewiseLine {
  std::vector<Rational> breakpoints;
  std::vector<AffineFunction> pieces;  // breakpoints.size() + 1 entries, each 1-D
};

/// Exact piecewise form of a one-input network, by breakpoint propagation:
/// within an interval every layer output is affine, so the next layer's
/// breakpoints are roots of affine functions.
PiecewiseLine line_profile(const Network& net);

/// Full census of a one-input network.  In one dimension the convex, open
/// connected and closed connected counts all equal the maximal-piece count,
/// the affine count is the number of distinct piece functions, and the
/// pattern-based counts follow from sampling every refined interval and
/// every breakpoint (patterns are constant on the open intervals between
/// consecutive pre-activation roots).
CensusReport line_census(const Network& net);

/// Guaranteed lower bounds from random rational samples: distinct activation
/// patterns seen (bounds definition 1) and distinct functions over samples
/// certified interior to a full-dimensional region (bounds definition 6).
/// Deterministic for a fixed seed.
struct SampleBounds {
  std::uint64_t lb_r1 = 0;
  std::uint64_t lb_r6 = 0;
  std::uint64_t interior_samples = 0;  // samples that yielded an interior certificate
};

SampleBounds sample_lower_bounds(const Network& net, std::uint64_t trials, std::uint64_t seed);

/// Closed-form region counts of the generated families:
///   generic(m, n)  cells of m generic affine hyperplanes in R^n:
///                  sum_{i<=n} C(m, i)
///   central(m, n)  cells of m generic hyperplanes through the origin:
///                  2 * sum_{i<=n-1} C(m-1, i)
///   bump(n)        connected regions of the binary bump: 1 + 2^(2n)
///   counter(k, n)  connected regions of the counting network for a formula
///                  with k satisfying assignments: 1 + k * 2^n
///   power(m, k)    affine regions of an m-function network amplified k
///                  times: m^k
/// Unknown names raise ValidationError.
Integer family_formula(const std::string& name, const std::vector<std::uint64_t>& params);

}  // namespace reluregions
