#pragma once

#include <cstdint>
#include <vector>

#include "reluregions/affine.hpp"

namespace reluregions {

/// One dense layer: y = W x + b, where W is rows() x cols().
struct Layer {
  std::vector<std::vector<Rational>> weights;  // row-major
  std::vector<Rational> biases;

  int rows() const { return static_cast<int>(weights.size()); }
  int cols() const { return weights.empty() ? 0 : static_cast<int>(weights[0].size()); }
};

/// A fully-connected ReLU network.  Every layer except the last applies ReLU
/// componentwise; the final layer is affine with exactly one output.
struct Network {
  int input_dim = 0;
  std::vector<Layer> layers;  // hidden layers..., then the output layer

  /// Number of hidden layers.
  int depth() const { return static_cast<int>(layers.size()) - 1; }

  /// Width of hidden layer l (0-based among hidden layers).
  int width(int l) const { return layers[l].rows(); }

  /// Total number of hidden (ReLU) neurons.
  int hidden_count() const;

  /// Largest dimension appearing anywhere in the network, including the
  /// input and output dimensions.
  int max_width() const;

  /// Throws ValidationError unless the shape is a consistent chain ending in
  /// a single output and input_dim >= 1.
  void validate() const;
};

/// Forward evaluation with exact arithmetic; returns the single output value.
Rational evaluate(const Network& net, const Point& x);

/// Activation pattern bits, one per hidden neuron in layer-major order
/// (layer 0 neurons first).  A neuron is active (1) exactly when its
/// pre-activation value is strictly positive.
using Pattern = std::vector<uint8_t>;

/// The pattern induced by a concrete input point.
Pattern pattern_at(const Network& net, const Point& x);

/// Flat index of hidden neuron j in hidden layer l.
int pattern_index(const Network& net, int layer, int j);

/// Pre-activation affine functions of every hidden layer, then the output
/// row, under a fixed pattern: outputs of inactive neurons are replaced by
/// the zero function before feeding the next layer.  Result[l][j] is the
/// pre-activation of neuron j of layer l as a function of the network input;
/// result[depth()][0] is the output function.
std::vector<std::vector<AffineFunction>> masked_preactivations(const Network& net,
                                                               const Pattern& a);

/// The affine function the network computes on (the closure of) the region
/// of pattern `a`: output row of the fully masked composition.
AffineFunction affine_map_of_pattern(const Network& net, const Pattern& a);

/// Pre-activation of one hidden neuron as an affine function of the input,
/// masked by `a` on all earlier layers only (bits of the neuron's own layer
/// and later layers are ignored).
AffineFunction preactivation_affine(const Network& net, const Pattern& a, int layer, int j);

}  // namespace reluregions
