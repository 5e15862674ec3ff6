#include "reluregions/gadgets.hpp"

#include <set>
#include <utility>

#include "reluregions/errors.hpp"

namespace reluregions {

namespace {

Layer layer_from_rows(const std::vector<AffineFunction>& rows) {
  Layer out;
  out.weights.reserve(rows.size());
  out.biases.reserve(rows.size());
  for (const AffineFunction& f : rows) {
    out.weights.push_back(f.w);
    out.biases.push_back(f.b);
  }
  return out;
}

AffineFunction output_row(const Network& net) {
  const Layer& last = net.layers.back();
  return AffineFunction{last.weights[0], last.biases[0]};
}

/// Re-bases f onto a wider previous layer whose block for this network
/// starts at column `offset`.
AffineFunction embed(const AffineFunction& f, int offset, int width) {
  AffineFunction g = AffineFunction::zero(width);
  for (int j = 0; j < f.dim(); ++j) g.w[offset + j] = f.w[j];
  g.b = f.b;
  return g;
}

/// Equal-depth networks run side by side: merged hidden layers plus each
/// component's output row expressed over the merged last hidden layer (or
/// over the input when there are no hidden layers).
struct Stacked {
  int input_dim = 0;
  std::vector<Layer> hidden;
  std::vector<AffineFunction> outputs;
};

Stacked stack_parallel(std::vector<Network> nets) {
  if (nets.empty()) throw ValidationError("cannot stack an empty list of networks");
  const int dim = nets[0].input_dim;
  int depth = 0;
  for (const Network& net : nets) {
    net.validate();
    if (net.input_dim != dim) throw ValidationError("stacked networks must share one input dimension");
    if (net.depth() > depth) depth = net.depth();
  }
  for (Network& net : nets) net = pad_depth(net, depth);

  Stacked st;
  st.input_dim = dim;
  for (int l = 0; l < depth; ++l) {
    int prev_total = dim;
    if (l > 0) {
      prev_total = 0;
      for (const Network& net : nets) prev_total += net.width(l - 1);
    }
    Layer merged;
    int offset = 0;
    for (const Network& net : nets) {
      const Layer& src = net.layers[l];
      for (int r = 0; r < src.rows(); ++r) {
        if (l == 0) {
          merged.weights.push_back(src.weights[r]);  // shared input columns
        } else {
          std::vector<Rational> w(prev_total, Rational(0));
          for (int j = 0; j < src.cols(); ++j) w[offset + j] = src.weights[r][j];
          merged.weights.push_back(std::move(w));
        }
        merged.biases.push_back(src.biases[r]);
      }
      if (l > 0) offset += net.width(l - 1);
    }
    st.hidden.push_back(std::move(merged));
  }

  const int last_total = depth == 0 ? dim : st.hidden.back().rows();
  int offset = 0;
  for (const Network& net : nets) {
    AffineFunction o = output_row(net);
    st.outputs.push_back(depth == 0 ? o : embed(o, offset, last_total));
    if (depth > 0) offset += net.width(depth - 1);
  }
  return st;
}

Network finish(Stacked st, const AffineFunction& out) {
  Network net;
  net.input_dim = st.input_dim;
  net.layers = std::move(st.hidden);
  net.layers.push_back(layer_from_rows({out}));
  net.validate();
  return net;
}

Network gate(const Network& a, const Network& b, bool take_min) {
  Stacked st = stack_parallel({a, b});
  const AffineFunction alpha = st.outputs[0];
  const AffineFunction beta = st.outputs[1];
  const AffineFunction u = beta - alpha;
  const AffineFunction p = take_min ? beta : alpha;
  st.hidden.push_back(layer_from_rows({u, p, -p}));

  AffineFunction out = AffineFunction::zero(3);
  out.w[0] = take_min ? Rational(-1) : Rational(1);
  out.w[1] = Rational(1);
  out.w[2] = Rational(-1);
  return finish(std::move(st), out);
}

std::vector<Rational> unit_row(int n, int i, const Rational& value) {
  std::vector<Rational> w(n, Rational(0));
  w[i] = value;
  return w;
}

/// Hidden layer 1 shared by the well/bump/sat builders: 4n well neurons,
/// then one neuron per clause.
Layer well_and_clause_layer(int n, const std::vector<Clause>& clauses) {
  Layer l1;
  for (int i = 0; i < n; ++i) {
    l1.weights.push_back(unit_row(n, i, Rational(-1)));
    l1.biases.push_back(Rational(0));
    l1.weights.push_back(unit_row(n, i, Rational(1)));
    l1.biases.push_back(Rational(0));
    l1.weights.push_back(unit_row(n, i, Rational(2)));
    l1.biases.push_back(Rational(-1));
    l1.weights.push_back(unit_row(n, i, Rational(2)));
    l1.biases.push_back(Rational(-2));
  }
  for (const Clause& cl : clauses) {
    std::vector<Rational> w(n, Rational(0));
    for (int v : cl.pos) w[v - 1] = Rational(-1);
    for (int v : cl.neg) w[v - 1] = Rational(1);
    l1.weights.push_back(std::move(w));
    l1.biases.push_back(Rational(1 - static_cast<int>(cl.neg.size())));
  }
  return l1;
}

/// Output coefficients of the well sum over the 4n well neurons, extended
/// with `extra` trailing coefficients of the given value.
std::vector<Rational> well_pattern(int n, int extra, const Rational& extra_value) {
  std::vector<Rational> w;
  w.reserve(4 * n + extra);
  for (int i = 0; i < n; ++i) {
    w.push_back(Rational(-1));
    w.push_back(Rational(-1));
    w.push_back(Rational(1));
    w.push_back(Rational(-1));
  }
  for (int j = 0; j < extra; ++j) w.push_back(extra_value);
  return w;
}

}  // namespace

Network affine_network(const AffineFunction& f) {
  if (f.dim() < 1) throw ValidationError("affine network needs at least one input");
  Network net;
  net.input_dim = f.dim();
  net.layers.push_back(layer_from_rows({f}));
  net.validate();
  return net;
}

Network relu_network(const AffineFunction& f) {
  if (f.dim() < 1) throw ValidationError("relu network needs at least one input");
  Network net;
  net.input_dim = f.dim();
  net.layers.push_back(layer_from_rows({f}));
  AffineFunction out = AffineFunction::zero(1);
  out.w[0] = Rational(1);
  net.layers.push_back(layer_from_rows({out}));
  net.validate();
  return net;
}

Network pad_depth(const Network& net, int target_depth) {
  net.validate();
  if (target_depth < net.depth()) {
    throw ValidationError("pad_depth cannot reduce the number of hidden layers");
  }
  Network out = net;
  while (out.depth() < target_depth) {
    const AffineFunction o = output_row(out);
    out.layers.back() = layer_from_rows({o, -o});
    AffineFunction recombine = AffineFunction::zero(2);
    recombine.w[0] = Rational(1);
    recombine.w[1] = Rational(-1);
    out.layers.push_back(layer_from_rows({recombine}));
  }
  return out;
}

Network linear_combination(const std::vector<Rational>& coeffs,
                           const std::vector<Network>& nets,
                           const Rational& bias) {
  if (coeffs.size() != nets.size()) {
    throw ValidationError("linear combination needs one coefficient per network");
  }
  Stacked st = stack_parallel(nets);
  const int width = st.hidden.empty() ? st.input_dim : st.hidden.back().rows();
  AffineFunction out = AffineFunction::zero(width);
  for (size_t i = 0; i < nets.size(); ++i) {
    AffineFunction term = st.outputs[i];
    term.scale(coeffs[i]);
    out += term;
  }
  out.b += bias;
  return finish(std::move(st), out);
}

Network subtract(const Network& a, const Network& b) {
  return linear_combination({Rational(1), Rational(-1)}, {a, b}, Rational(0));
}

Network max_gate(const Network& a, const Network& b) { return gate(a, b, false); }

Network min_gate(const Network& a, const Network& b) { return gate(a, b, true); }

Network amplify(const Network& net, int k) {
  net.validate();
  if (k < 1) throw ValidationError("amplify needs at least one copy");
  if (k == 1) return net;
  Network out;
  out.input_dim = net.input_dim * k;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& src = net.layers[l];
    const int prev = l == 0 ? net.input_dim : net.layers[l - 1].rows();
    const bool is_output = l + 1 == net.layers.size();
    Layer merged;
    if (is_output) {
      std::vector<Rational> w;
      w.reserve(static_cast<size_t>(prev) * k);
      for (int c = 0; c < k; ++c) {
        w.insert(w.end(), src.weights[0].begin(), src.weights[0].end());
      }
      merged.weights.push_back(std::move(w));
      merged.biases.push_back(src.biases[0] * k);
    } else {
      for (int c = 0; c < k; ++c) {
        for (int r = 0; r < src.rows(); ++r) {
          std::vector<Rational> w(static_cast<size_t>(prev) * k, Rational(0));
          for (int j = 0; j < prev; ++j) w[static_cast<size_t>(c) * prev + j] = src.weights[r][j];
          merged.weights.push_back(std::move(w));
          merged.biases.push_back(src.biases[r]);
        }
      }
    }
    out.layers.push_back(std::move(merged));
  }
  out.validate();
  return out;
}

Network build_well(int n) {
  if (n < 1) throw ValidationError("well network needs at least one input");
  Network net;
  net.input_dim = n;
  net.layers.push_back(well_and_clause_layer(n, {}));
  Layer out;
  out.weights.push_back(well_pattern(n, 0, Rational(0)));
  out.biases.push_back(Rational(0));
  net.layers.push_back(std::move(out));
  net.validate();
  return net;
}

Network build_binary_bump(int n, const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) {
    throw ValidationError("bump offset must lie strictly between 0 and 1/2");
  }
  Network net = build_well(n);
  Layer l2;
  l2.weights.push_back(well_pattern(n, 0, Rational(0)));
  l2.biases.push_back(eps);
  net.layers.back() = std::move(l2);
  AffineFunction out = AffineFunction::zero(1);
  out.w[0] = Rational(1);
  net.layers.push_back(layer_from_rows({out}));
  net.validate();
  return net;
}

Network build_sat_bump(const CnfFormula& cnf) {
  const int n = cnf.num_vars;
  if (n < 1) throw ValidationError("sat bump needs at least one variable");
  const int m = cnf.num_clauses();
  Network net;
  net.input_dim = n;
  net.layers.push_back(well_and_clause_layer(n, cnf.clauses));
  Layer l2;
  l2.weights.push_back(well_pattern(n, m, Rational(-1)));
  l2.biases.push_back(Rational(1, n + 1));
  net.layers.push_back(std::move(l2));
  AffineFunction out = AffineFunction::zero(1);
  out.w[0] = Rational(1);
  net.layers.push_back(layer_from_rows({out}));
  net.validate();
  return net;
}

Network build_sat_ladder(const CnfFormula& cnf, int threshold_k, int layers) {
  if (threshold_k < 1 || threshold_k > 4096) {
    throw ValidationError("ladder threshold must lie in [1, 4096]");
  }
  if (layers < 2 || layers > 64) {
    throw ValidationError("ladder depth must lie in [2, 64]");
  }
  Network net = build_sat_bump(cnf);
  if (threshold_k >= 2) {
    const int n = cnf.num_vars;
    const int m = cnf.num_clauses();
    const Rational slope(2 * (n + m));
    Layer& l1 = net.layers[0];
    l1.weights.push_back(unit_row(n, 0, Rational(1)));
    l1.biases.push_back(Rational(0));
    l1.weights.push_back(unit_row(n, 0, Rational(-1)));
    l1.biases.push_back(Rational(0));

    Layer& l2 = net.layers[1];
    l2.weights[0].push_back(Rational(0));
    l2.weights[0].push_back(Rational(0));
    for (int j = 2; j <= threshold_k; ++j) {
      std::vector<Rational> w(static_cast<size_t>(4 * n + m + 2), Rational(0));
      w[4 * n + m] = slope;
      w[4 * n + m + 1] = -slope;
      l2.weights.push_back(std::move(w));
      l2.biases.push_back(-slope * j);
    }

    Layer& out = net.layers[2];
    out.weights[0].assign(static_cast<size_t>(threshold_k), Rational(-1));
    out.weights[0][0] = Rational(1);
    out.biases[0] = Rational(0);
    net.validate();
  }
  return pad_depth(net, layers);
}

Network build_sat_counter(const CnfFormula& cnf, int layers) {
  if (layers < 3 || layers > 64) {
    throw ValidationError("counter depth must lie in [3, 64]");
  }
  for (const Clause& cl : cnf.clauses) {
    if (cl.size() == 0) throw ValidationError("counter networks require nonempty clauses");
  }
  const int n = cnf.num_vars;
  if (n < 1) throw ValidationError("counter network needs at least one variable");
  const int m = cnf.num_clauses();
  const Integer den = 2 + Integer(n) + Integer(n) * m;
  const Rational eps = Rational(1) / Rational(den);

  Network net;
  net.input_dim = n;
  net.layers.push_back(well_and_clause_layer(n, cnf.clauses));

  Layer l2;
  l2.weights.push_back(well_pattern(n, m, Rational(0)));
  l2.biases.push_back(eps);
  std::vector<Rational> clause_sum(static_cast<size_t>(4 * n + m), Rational(0));
  for (int j = 0; j < m; ++j) clause_sum[4 * n + j] = Rational(-1);
  l2.weights.push_back(std::move(clause_sum));
  l2.biases.push_back(Rational(1) - Rational(n + 1) * eps);
  net.layers.push_back(std::move(l2));

  // min(a, b) = -max(0, b-a) + max(0, b) - max(0, -b)
  Layer l3;
  l3.weights.push_back({Rational(-1), Rational(1)});
  l3.biases.push_back(Rational(0));
  l3.weights.push_back({Rational(0), Rational(1)});
  l3.biases.push_back(Rational(0));
  l3.weights.push_back({Rational(0), Rational(-1)});
  l3.biases.push_back(Rational(0));
  net.layers.push_back(std::move(l3));

  Layer out;
  out.weights.push_back({Rational(-1), Rational(1), Rational(-1)});
  out.biases.push_back(Rational(0));
  net.layers.push_back(std::move(out));
  net.validate();
  return pad_depth(net, layers);
}

Network build_arrangement_network(const std::vector<AffineFunction>& hyperplanes,
                                  const Point& orient) {
  const int n = static_cast<int>(orient.size());
  if (n < 1) throw ValidationError("arrangement orienting point must have dimension >= 1");
  if (hyperplanes.empty()) throw ValidationError("arrangement needs at least one hyperplane");

  Layer l1;
  std::set<std::vector<Rational>> directions;
  for (size_t i = 0; i < hyperplanes.size(); ++i) {
    const AffineFunction& f = hyperplanes[i];
    if (f.dim() != n) {
      throw ValidationError("arrangement hyperplane " + std::to_string(i) +
                            " does not match the orienting point's dimension");
    }
    if (f.is_constant()) {
      throw ValidationError("arrangement hyperplane " + std::to_string(i) + " has a zero normal");
    }
    int sign = 0;
    const AffineFunction dir = normalize_direction(f, sign);
    if (!directions.insert(dir.w).second) {
      throw ValidationError("arrangement hyperplanes " + std::to_string(i) +
                            " and an earlier one have proportional normals");
    }
    const Rational side = f.eval(orient);
    if (side == 0) {
      throw ValidationError("orienting point lies on hyperplane " + std::to_string(i));
    }
    std::vector<Rational> w = f.w;
    Rational b = f.b;
    if (side < 0) {
      for (Rational& c : w) c = -c;
      b = -b;
    }
    l1.weights.push_back(std::move(w));
    l1.biases.push_back(std::move(b));
  }

  Network net;
  net.input_dim = n;
  net.layers.push_back(std::move(l1));
  Layer out;
  out.weights.push_back(std::vector<Rational>(hyperplanes.size(), Rational(1)));
  out.biases.push_back(Rational(0));
  net.layers.push_back(std::move(out));
  net.validate();
  return net;
}

Network build_example_a() {
  const AffineFunction y{{Rational(0), Rational(1)}, Rational(0)};
  const AffineFunction minus_one{{Rational(0), Rational(0)}, Rational(-1)};
  const AffineFunction minus_x{{Rational(-1), Rational(0)}, Rational(0)};
  const AffineFunction three_minus_2x{{Rational(-2), Rational(0)}, Rational(3)};

  const Network g1 = max_gate(affine_network(minus_one), affine_network(minus_x));
  const Network g2 = max_gate(affine_network(three_minus_2x), affine_network(minus_x));
  return min_gate(affine_network(y), min_gate(g1, g2));
}

Network build_example_b() {
  const AffineFunction x{{Rational(1), Rational(0)}, Rational(0)};
  const AffineFunction minus_y{{Rational(0), Rational(-1)}, Rational(0)};
  const AffineFunction x_minus_y{{Rational(1), Rational(-1)}, Rational(0)};
  const AffineFunction x_minus_2{{Rational(1), Rational(0)}, Rational(-2)};
  const AffineFunction y_minus_2{{Rational(0), Rational(1)}, Rational(-2)};
  const AffineFunction x_minus_1{{Rational(1), Rational(0)}, Rational(-1)};
  const AffineFunction y_minus_1{{Rational(0), Rational(1)}, Rational(-1)};

  const Network base = linear_combination(
      {Rational(1), Rational(1), Rational(-1)},
      {relu_network(x), relu_network(minus_y), relu_network(x_minus_y)}, Rational(0));
  const Network far_corner = min_gate(relu_network(x_minus_2), relu_network(y_minus_2));
  const Network near_corner = min_gate(relu_network(x_minus_1), relu_network(y_minus_1));
  return linear_combination({Rational(1), Rational(1), Rational(-2)},
                            {base, far_corner, near_corner}, Rational(0));
}

}  // namespace reluregions
