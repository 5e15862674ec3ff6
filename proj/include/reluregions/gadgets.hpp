#pragma once

#include <cstdint>
#include <vector>

#include "reluregions/affine.hpp"
#include "reluregions/cnf.hpp"
#include "reluregions/network.hpp"
#include "reluregions/rational.hpp"

namespace reluregions {

// Network combinators and generators.
//
// Every builder documents its exact layer layout (neuron order within each
// hidden layer), because activation patterns expose the layout externally:
// two networks computing the same function but with permuted neurons produce
// permuted patterns.

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

// Network with no hidden layers computing the affine function f.
Network affine_network(const AffineFunction& f);

// Network computing max(0, f) with a single hidden neuron.
Network relu_network(const AffineFunction& f);

// Appends identity padding layers until the network has exactly
// `target_depth` hidden layers.  Each padding step replaces the output value
// t by a hidden pair (max(0,t), max(0,-t)) and recombines them downstream as
// t = max(0,t) - max(0,-t), so the computed function is unchanged.
//
// Layout: each padding layer has exactly two neurons, positive part first.
// Requires target_depth >= current depth.
Network pad_depth(const Network& net, int target_depth);

// Network computing sum_i coeffs[i] * f_i + bias where f_i is the function
// of nets[i].  All networks must share the same input dimension.  Networks
// of unequal depth are padded (pad_depth) to the maximum depth, then run in
// parallel.
//
// Layout: hidden layer l is the concatenation of the networks' layer-l
// neuron blocks in argument order (layer 0 reads the shared input; deeper
// layers are block-diagonal).
Network linear_combination(const std::vector<Rational>& coeffs,
                           const std::vector<Network>& nets,
                           const Rational& bias);

// Network computing f_a - f_b.  Equivalent to
// linear_combination({1, -1}, {a, b}, 0).
Network subtract(const Network& a, const Network& b);

// Networks computing max(f_a, f_b) and min(f_a, f_b).  Both gates pad the
// arguments to equal depth, stack them in parallel, and add exactly one
// hidden layer with three neurons:
//
//   max: u = max(0, beta - alpha), p = max(0, alpha), q = max(0, -alpha),
//        output u + p - q  ( = alpha + max(0, beta - alpha) )
//   min: u = max(0, beta - alpha), p = max(0, beta),  q = max(0, -beta),
//        output -u + p - q ( = beta - max(0, beta - alpha) )
//
// where alpha, beta are the stacked networks' output rows.  Neuron order
// within the gate layer is (u, p, q).
Network max_gate(const Network& a, const Network& b);
Network min_gate(const Network& a, const Network& b);

// Network over k*n inputs computing sum_{c=0}^{k-1} f(x_c) where x_c is the
// c-th block of n consecutive inputs.  Every layer is block-diagonal with k
// copies of the original layer (copy order = block order); the output row
// concatenates the copies' output rows and the output bias is k times the
// original.  For k = 1 the result is the original network unchanged.
Network amplify(const Network& net, int k);

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

// "Well" network W_n: one hidden layer, 4n neurons, computing
//
//   W_n(x) = sum_i [ -max(0,-x_i) - max(0,x_i) + max(0,2x_i-1) - max(0,2x_i-2) ].
//
// W_n <= 0 everywhere and W_n(x) = 0 exactly when x is a 0-1 vector.
// Layout: neurons grouped per coordinate i, group order
// (-x_i, x_i, 2x_i-1, 2x_i-2) at indices 4i .. 4i+3.
Network build_well(int n);

// Bump network: two hidden layers computing max(0, eps + W_n(x)).
// Requires 0 < eps < 1/2.  The value is eps exactly on the 0-1 vectors and
// the support is the union of the eps-balls (in the max norm) around them.
// Layout: layer 1 as build_well; layer 2 a single neuron.
Network build_binary_bump(int n, const Rational& eps);

// Satisfiability bump network for a CNF formula with n variables and m
// clauses, computing
//
//   max(0, eps + W_n(x) - sum_j max(0, 1 - sum_{J+} x_i - sum_{J-} (1-x_i)))
//
// with eps = 1/(n+1).  The function is identically zero when the formula is
// unsatisfiable and takes the value eps at every satisfying 0-1 point.
// Layout: layer 1 = 4n well neurons then m clause neurons (clause j has
// weight -1 on its positive variables, +1 on its negated variables, bias
// 1 - |J-|); layer 2 a single neuron.
Network build_sat_bump(const CnfFormula& cnf);

// Ladder network over the satisfiability bump: for threshold_k >= 2 computes
//
//   f_bump(x) - sum_{j=2}^{threshold_k} max(0, 2(n+m) (x_1 - j)),
//
// then pads to exactly `layers` hidden layers (layers >= 2).  For
// threshold_k = 1 the function is f_bump itself.  The network has more than
// threshold_k regions (connected-region and affine-region counts alike) if
// and only if the formula is satisfiable, and exactly threshold_k regions
// when threshold_k >= 2 and the formula is unsatisfiable.
//
// Layout: layer 1 = sat-bump layer 1, then the pair (max(0,x_1),
// max(0,-x_1)); layer 2 = the bump neuron, then the ladder neurons for
// j = 2..threshold_k in increasing j; padding layers follow.
// Requires 1 <= threshold_k <= 4096 and 2 <= layers <= 64.
Network build_sat_ladder(const CnfFormula& cnf, int threshold_k, int layers);

// Counting network: three hidden layers computing
//
//   min( max(0, eps + W_n(x)),  max(0, 1 - (n+1) eps - sum_j c_j(x)) )
//
// with eps = 1/(2 + n + n*m) and c_j the clause neurons of build_sat_bump,
// then padded to exactly `layers` hidden layers (layers >= 3).  If the
// formula has exactly k satisfying assignments the connected-region count is
// exactly 1 + k * 2^n.  Every clause must be nonempty.
//
// Layout: layer 1 = 4n well neurons then m clause neurons; layer 2 =
// (a, b) with a the bump neuron and b the clause-sum neuron; layer 3 =
// (max(0,b-a), max(0,b), max(0,-b)) combined as -u + p - q = min(a, b).
// Requires 3 <= layers <= 64.
Network build_sat_counter(const CnfFormula& cnf, int layers);

// One-hidden-layer network sum_i max(0, w_i^T x + b_i) for a hyperplane
// arrangement (all b_i = 0 gives the central case).  Each hyperplane is
// flipped if needed so that w_i^T orient + b_i > 0; the region counts of the
// result under all definitions equal the number of arrangement cells.
// Errors: a zero normal, an orienting point on some hyperplane, or two
// proportional normals (parallel or duplicate hyperplanes).
Network build_arrangement_network(const std::vector<AffineFunction>& hyperplanes,
                                  const Point& orient);

// Three-hidden-layer network over (x, y) computing
//   min( y, max(-1, -x), max(3 - 2x, -x) )
// built from max/min gates; hidden layers have 8, 5 and 3 neurons.
Network build_example_a();

// Two-hidden-layer network over (x, y) computing
//   max(0,x) + max(0,-y) - max(0,x-y)
//     + min(max(0,x-2), max(0,y-2)) - 2 min(max(0,x-1), max(0,y-1))
// built from ReLU atoms, min gates and a linear combination; hidden layers
// have 7 and 8 neurons.
Network build_example_b();

}  // namespace reluregions
