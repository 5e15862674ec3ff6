#pragma once

#include "reluregions/lp.hpp"
#include "reluregions/network.hpp"

namespace reluregions {

/// The weak relaxation P_a of an activation region: every active neuron's
/// masked pre-activation constrained >= 0, every inactive one's <= 0.
/// Constant pre-activations never reach the LP: a violated one sets a flag,
/// a satisfied one is dropped.
struct RegionSystem {
  ConstraintSystem closure;      // rows of P_a (non-constant pre-activations only)
  std::vector<int> active_rows;  // row indices from active neurons; strict for S_a itself
  std::vector<int> proper_rows;  // rows that are strict on any full-dimensional S_a: the
                                 // active rows plus inactive rows whose pre-activation is
                                 // not identically zero
  bool region_empty = false;     // a constant pre-activation already rules out S_a
  bool closure_empty = false;    // ... or even rules out P_a
};

RegionSystem region_system(const Network& net, const Pattern& a);

/// Status of the activation region S_a: -1 when it is empty, otherwise its
/// affine dimension (which equals the dimension of the relaxation P_a).
int region_status(const Network& net, const Pattern& a, LpContext* ctx = nullptr);

/// Affine dimension of closure(S_a) intersected with closure(S_b), or -1
/// when that intersection is empty (in particular when either region is).
/// For nonempty regions the closure of S_a is exactly P_a, so this reduces
/// to the dimension of the combined constraint system.
int closure_intersection_dim(const Network& net, const Pattern& a, const Pattern& b,
                             LpContext* ctx = nullptr);

}  // namespace reluregions
