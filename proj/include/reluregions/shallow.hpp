#pragma once

#include <cstdint>
#include <vector>

#include "reluregions/census.hpp"
#include "reluregions/lp.hpp"
#include "reluregions/network.hpp"

namespace reluregions {

/// One hidden neuron inside a hyperplane class: its pre-activation equals
/// `scale` times the class representative, and it feeds the output layer
/// with weight `output_weight`.
struct ClassMember {
  int neuron = 0;
  Rational scale;
  Rational output_weight;
};

/// All hidden neurons whose pre-activations are nonzero multiples of one
/// affine function (the representative, normalized to leading coefficient 1),
/// so they all fold along the same hyperplane.  Crossing it from the
/// negative to the positive side of the representative changes the output's
/// affine part by (positive_side - negative_side) times the representative:
///   positive_side = sum of output_weight * scale over members with scale > 0,
///   negative_side = the same sum over members with scale < 0.
struct HyperplaneClass {
  AffineFunction representative;
  std::vector<ClassMember> members;
  Rational positive_side;
  Rational negative_side;
};

struct HyperplaneGrouping {
  std::vector<HyperplaneClass> classes;       // ordered by first contributing neuron
  std::vector<int> degenerate_neurons;        // constant pre-activation; no fold at all
};

/// Groups the hidden neurons of a depth-1 network by shared fold hyperplane.
/// Throws ValidationError when the network is not shallow.
HyperplaneGrouping group_hyperplanes(const Network& net);

/// A class is invisible in the network's function when both sides contribute
/// the same slope, i.e. positive_side == negative_side.
bool class_cancels(const HyperplaneClass& cls);

/// Decides in polynomial time whether a shallow network computes an affine
/// function: true exactly when every hyperplane class cancels.
bool is_affine_shallow(const Network& net);

/// The hyperplanes along which the network's function actually bends.
struct EffectiveArrangement {
  int dim = 0;  // input dimension, kept so an empty arrangement still counts 1 cell
  std::vector<AffineFunction> hyperplanes;
};

EffectiveArrangement effective_arrangement(const Network& net);

/// Number of full-dimensional open cells of the arrangement, by depth-first
/// sign enumeration with one strict feasibility check per undecided branch.
std::uint64_t count_arrangement_cells(const EffectiveArrangement& arr, LpContext* ctx = nullptr);

/// Region census of a shallow network.  Connected and convex pieces coincide
/// with the cells of the effective arrangement, so definitions 3 and 4 are
/// both computed here (unlike the general engine); definitions 1 and 2 are
/// counted by exhausting activation patterns, and definition 5 stays open.
CensusReport shallow_census(const Network& net, const EngineOptions& opts = {});

}  // namespace reluregions
