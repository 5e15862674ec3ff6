#include "reluregions/network.hpp"

#include <algorithm>
#include <string>

#include "reluregions/errors.hpp"

namespace reluregions {

int Network::hidden_count() const {
  int s = 0;
  for (int l = 0; l < depth(); ++l) s += width(l);
  return s;
}

int Network::max_width() const {
  int m = input_dim;
  for (const auto& layer : layers) m = std::max(m, layer.rows());
  return m;
}

void Network::validate() const {
  if (input_dim < 1) throw ValidationError("network: input_dim must be >= 1");
  if (layers.empty()) throw ValidationError("network: at least the output layer is required");
  int prev = input_dim;
  for (size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    const std::string where = "layer " + std::to_string(l);
    if (layer.rows() == 0) throw ValidationError("network: " + where + " has no neurons");
    if (static_cast<int>(layer.biases.size()) != layer.rows()) {
      throw ValidationError("network: " + where + " bias count does not match row count");
    }
    for (const auto& row : layer.weights) {
      if (static_cast<int>(row.size()) != prev) {
        throw ValidationError("network: " + where + " weight row has wrong length (expected " +
                              std::to_string(prev) + ", got " + std::to_string(row.size()) + ")");
      }
    }
    prev = layer.rows();
  }
  if (layers.back().rows() != 1) {
    throw ValidationError("network: output layer must have exactly one row");
  }
}

Rational evaluate(const Network& net, const Point& x) {
  if (static_cast<int>(x.size()) != net.input_dim) {
    throw ValidationError("evaluate: input has wrong dimension");
  }
  std::vector<Rational> cur = x;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    std::vector<Rational> next(layer.rows());
    for (int r = 0; r < layer.rows(); ++r) {
      Rational acc = layer.biases[r];
      for (size_t c = 0; c < cur.size(); ++c) {
        if (layer.weights[r][c] != 0) acc += layer.weights[r][c] * cur[c];
      }
      next[r] = std::move(acc);
    }
    const bool is_output = (l + 1 == net.layers.size());
    if (!is_output) {
      for (auto& v : next) {
        if (v < 0) v = 0;
      }
    }
    cur = std::move(next);
  }
  return cur[0];
}

Pattern pattern_at(const Network& net, const Point& x) {
  if (static_cast<int>(x.size()) != net.input_dim) {
    throw ValidationError("pattern_at: input has wrong dimension");
  }
  Pattern bits;
  bits.reserve(net.hidden_count());
  std::vector<Rational> cur = x;
  for (int l = 0; l < net.depth(); ++l) {
    const Layer& layer = net.layers[l];
    std::vector<Rational> next(layer.rows());
    for (int r = 0; r < layer.rows(); ++r) {
      Rational acc = layer.biases[r];
      for (size_t c = 0; c < cur.size(); ++c) {
        if (layer.weights[r][c] != 0) acc += layer.weights[r][c] * cur[c];
      }
      bits.push_back(acc > 0 ? 1 : 0);
      next[r] = acc > 0 ? std::move(acc) : Rational(0);
    }
    cur = std::move(next);
  }
  return bits;
}

int pattern_index(const Network& net, int layer, int j) {
  int base = 0;
  for (int l = 0; l < layer; ++l) base += net.width(l);
  return base + j;
}

std::vector<std::vector<AffineFunction>> masked_preactivations(const Network& net,
                                                               const Pattern& a) {
  if (static_cast<int>(a.size()) != net.hidden_count()) {
    throw ValidationError("pattern has wrong number of bits");
  }
  const int n = net.input_dim;
  std::vector<std::vector<AffineFunction>> result(net.layers.size());
  // Outputs of the previous layer as affine functions of the input, with
  // inactive neurons already replaced by the zero function.
  std::vector<AffineFunction> prev;
  prev.reserve(n);
  for (int i = 0; i < n; ++i) {
    AffineFunction e = AffineFunction::zero(n);
    e.w[i] = 1;
    prev.push_back(std::move(e));
  }
  int bit = 0;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    std::vector<AffineFunction>& rows = result[l];
    rows.reserve(layer.rows());
    for (int r = 0; r < layer.rows(); ++r) {
      AffineFunction f = AffineFunction::zero(n);
      f.b = layer.biases[r];
      for (int c = 0; c < layer.cols(); ++c) {
        const Rational& wrc = layer.weights[r][c];
        if (wrc == 0) continue;
        const AffineFunction& g = prev[c];
        for (int i = 0; i < n; ++i) {
          if (g.w[i] != 0) f.w[i] += wrc * g.w[i];
        }
        if (g.b != 0) f.b += wrc * g.b;
      }
      rows.push_back(std::move(f));
    }
    const bool is_output = (l + 1 == net.layers.size());
    if (!is_output) {
      prev.clear();
      prev.reserve(layer.rows());
      for (int r = 0; r < layer.rows(); ++r) {
        if (a[bit + r]) {
          prev.push_back(rows[r]);
        } else {
          prev.push_back(AffineFunction::zero(n));
        }
      }
      bit += layer.rows();
    }
  }
  return result;
}

AffineFunction affine_map_of_pattern(const Network& net, const Pattern& a) {
  return masked_preactivations(net, a)[net.layers.size() - 1][0];
}

AffineFunction preactivation_affine(const Network& net, const Pattern& a, int layer, int j) {
  if (layer < 0 || layer >= net.depth() || j < 0 || j >= net.width(layer)) {
    throw ValidationError("preactivation_affine: neuron index out of range");
  }
  return masked_preactivations(net, a)[layer][j];
}

}  // namespace reluregions
