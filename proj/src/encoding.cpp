#include "reluregions/encoding.hpp"

#include <algorithm>

namespace reluregions {

unsigned long matrix_encoding_size(const std::vector<std::vector<Rational>>& rows) {
  unsigned long total = 0;
  for (const auto& row : rows) {
    total += row.size();  // one unit per entry
    for (const auto& q : row) total += rational_encoding_size(q);
  }
  return total;
}

unsigned long vector_encoding_size(const std::vector<Rational>& v) {
  unsigned long total = v.size();
  for (const auto& q : v) total += rational_encoding_size(q);
  return total;
}

unsigned long network_encoding_size(const Network& net) {
  unsigned long total = 0;
  for (const auto& layer : net.layers) {
    total += matrix_encoding_size(layer.weights);
    total += vector_encoding_size(layer.biases);
  }
  return total;
}

Integer max_coefficient_magnitude(const Network& net) {
  Integer m = 1;
  auto consider = [&m](const Rational& q) {
    Integer p = abs(q.get_num());
    if (p > m) m = p;
    if (q.get_den() > m) m = Integer(q.get_den());
  };
  for (const auto& layer : net.layers) {
    for (const auto& row : layer.weights) {
      for (const auto& q : row) consider(q);
    }
    for (const auto& q : layer.biases) consider(q);
  }
  return m;
}

unsigned long long coefficient_bound(const Network& net) {
  const unsigned long long d = static_cast<unsigned long long>(net.depth());
  const unsigned long long n_max = static_cast<unsigned long long>(net.max_width());
  const unsigned long long size_amax = integer_encoding_size(max_coefficient_magnitude(net));
  return 36ULL * d * d * n_max * n_max * size_amax;
}

}  // namespace reluregions
