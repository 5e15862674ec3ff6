#pragma once

#include "reluregions/network.hpp"

namespace reluregions {

/// Size of an n x m rational matrix: n*m plus the sizes of all entries.
/// A vector is measured as an n x 1 matrix.
unsigned long matrix_encoding_size(const std::vector<std::vector<Rational>>& rows);
unsigned long vector_encoding_size(const std::vector<Rational>& v);

/// Total representation size of a network: the sum over all layers of the
/// weight-matrix and bias-vector sizes.
unsigned long network_encoding_size(const Network& net);

/// Largest absolute value among all numerators and denominators of the
/// network's weights and biases (at least 1 even for an all-zero network).
Integer max_coefficient_magnitude(const Network& net);

/// Work bound M = 36 * d^2 * n_max^2 * size(A_max), where d is the hidden
/// depth, n_max the widest dimension (input and output included) and A_max
/// the value from max_coefficient_magnitude.  For d >= 1, every affine
/// coefficient that region enumeration produces for the network has fraction
/// encoding size at most M.  Evaluates to 0 when d = 0.
unsigned long long coefficient_bound(const Network& net);

}  // namespace reluregions
