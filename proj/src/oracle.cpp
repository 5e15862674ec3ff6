#include "reluregions/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>

#include "reluregions/errors.hpp"

namespace reluregions {

namespace {

/// Pre-activations of one layer on an interval where the previous layer's
/// outputs are the given 1-D affine functions.
std::vector<AffineFunction> compose_layer(const Layer& layer,
                                          const std::vector<AffineFunction>& prev) {
  std::vector<AffineFunction> out;
  out.reserve(layer.rows());
  for (int r = 0; r < layer.rows(); ++r) {
    AffineFunction z = AffineFunction::zero(1);
    z.b = layer.biases[r];
    for (int j = 0; j < layer.cols(); ++j) {
      if (layer.weights[r][j] == 0) continue;
      z.w[0] += layer.weights[r][j] * prev[j].w[0];
      z.b += layer.weights[r][j] * prev[j].b;
    }
    out.push_back(std::move(z));
  }
  return out;
}

Rational interval_rep(const std::vector<Rational>& breaks, size_t i) {
  if (breaks.empty()) return Rational(0);
  if (i == 0) return breaks.front() - 1;
  if (i == breaks.size()) return breaks.back() + 1;
  Rational mid = (breaks[i - 1] + breaks[i]) / 2;
  return mid;
}

/// Index of the partition interval whose closure interior contains t, where
/// t is none of the breakpoints.
size_t interval_of(const std::vector<Rational>& breaks, const Rational& t) {
  size_t i = 0;
  while (i < breaks.size() && breaks[i] < t) ++i;
  return i;
}

struct Sweep {
  std::vector<Rational> breaks;        // full refinement: every root of every
                                       // pre-activation of every layer
  std::vector<AffineFunction> pieces;  // final output per interval, breaks+1
};

Sweep sweep_line(const Network& net) {
  net.validate();
  if (net.input_dim != 1) {
    throw ValidationError("the line oracle expects a network with one input");
  }

  std::vector<Rational> breaks;
  AffineFunction ident = AffineFunction::zero(1);
  ident.w[0] = 1;
  std::vector<std::vector<AffineFunction>> outputs{{ident}};

  for (int l = 0; l < net.depth(); ++l) {
    // Pre-activations per current interval, plus any roots strictly inside.
    std::vector<std::vector<AffineFunction>> pre(outputs.size());
    std::set<Rational> roots;
    for (size_t i = 0; i < outputs.size(); ++i) {
      pre[i] = compose_layer(net.layers[l], outputs[i]);
      for (const AffineFunction& z : pre[i]) {
        if (z.w[0] == 0) continue;
        Rational t = -z.b / z.w[0];
        const bool above = i == 0 || breaks[i - 1] < t;
        const bool below = i == breaks.size() || t < breaks[i];
        if (above && below) roots.insert(t);
      }
    }

    std::vector<Rational> old_breaks = breaks;
    if (!roots.empty()) {
      std::vector<Rational> merged;
      merged.reserve(breaks.size() + roots.size());
      std::merge(breaks.begin(), breaks.end(), roots.begin(), roots.end(),
                 std::back_inserter(merged));
      breaks = std::move(merged);
    }

    // ReLU on the refined partition: each refined interval inherits its
    // parent's pre-activations, whose signs are constant on its interior.
    std::vector<std::vector<AffineFunction>> next(breaks.size() + 1);
    for (size_t j = 0; j < next.size(); ++j) {
      const Rational rep = interval_rep(breaks, j);
      const std::vector<AffineFunction>& z = pre[interval_of(old_breaks, rep)];
      std::vector<AffineFunction> post;
      post.reserve(z.size());
      for (const AffineFunction& f : z) {
        post.push_back(f.eval({rep}) > 0 ? f : AffineFunction::zero(1));
      }
      next[j] = std::move(post);
    }
    outputs = std::move(next);
  }

  Sweep result;
  result.breaks = std::move(breaks);
  result.pieces.reserve(outputs.size());
  for (const std::vector<AffineFunction>& outs : outputs) {
    result.pieces.push_back(compose_layer(net.layers.back(), outs)[0]);
  }

  // Continuity across every breakpoint is a hard invariant of the sweep.
  for (size_t i = 0; i < result.breaks.size(); ++i) {
    if (result.pieces[i].eval({result.breaks[i]}) !=
        result.pieces[i + 1].eval({result.breaks[i]})) {
      throw InternalError("line sweep lost continuity at a breakpoint");
    }
  }
  return result;
}

}  // namespace

PiecewiseLine line_profile(const Network& net) {
  const Sweep s = sweep_line(net);
  PiecewiseLine out;
  out.pieces.push_back(s.pieces[0]);
  for (size_t i = 0; i < s.breaks.size(); ++i) {
    if (s.pieces[i + 1] == out.pieces.back()) continue;  // not a real breakpoint
    out.breakpoints.push_back(s.breaks[i]);
    out.pieces.push_back(s.pieces[i + 1]);
  }
  return out;
}

CensusReport line_census(const Network& net) {
  const Sweep s = sweep_line(net);

  std::uint64_t maximal_pieces = 1;
  for (size_t i = 0; i < s.breaks.size(); ++i) {
    if (s.pieces[i + 1] != s.pieces[i]) ++maximal_pieces;
  }
  const std::set<AffineFunction> distinct(s.pieces.begin(), s.pieces.end());

  // Patterns are constant on every interval interior of the full refinement
  // (each pre-activation's sign is), so one sample per interval plus the
  // breakpoints themselves see every pattern that occurs anywhere.
  std::set<Pattern> all_patterns;
  std::set<Pattern> interior_patterns;
  for (size_t i = 0; i <= s.breaks.size(); ++i) {
    Pattern a = pattern_at(net, {interval_rep(s.breaks, i)});
    interior_patterns.insert(a);
    all_patterns.insert(std::move(a));
  }
  for (const Rational& t : s.breaks) {
    all_patterns.insert(pattern_at(net, {t}));
  }

  CensusReport report;
  report.input_dim = 1;
  report.defs[0] = {true, all_patterns.size(), ""};
  report.defs[1] = {true, interior_patterns.size(), ""};
  report.defs[2] = {true, maximal_pieces, "one input: connected pieces are intervals, hence convex"};
  report.defs[3] = {true, maximal_pieces, ""};
  report.defs[4] = {true, maximal_pieces,
                    "one input: closed connected regions are closures of the maximal pieces"};
  report.defs[5] = {true, distinct.size(), ""};
  return report;
}

SampleBounds sample_lower_bounds(const Network& net, std::uint64_t trials, std::uint64_t seed) {
  net.validate();
  if (trials < 1) throw ValidationError("sampling needs at least one trial");

  // Raw 64-bit draws reduced by modulus: deterministic everywhere, and bias
  // is irrelevant for a lower bound.
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t kNumRange = 4096;  // numerators in [-4096, 4096]
  constexpr std::uint64_t kDenRange = 64;    // denominators in [1, 64]

  std::set<Pattern> patterns;
  std::set<AffineFunction> functions;
  std::uint64_t interior = 0;

  for (std::uint64_t t = 0; t < trials; ++t) {
    Point x(net.input_dim);
    for (int j = 0; j < net.input_dim; ++j) {
      const long num = static_cast<long>(rng() % (2 * kNumRange + 1)) - static_cast<long>(kNumRange);
      const long den = static_cast<long>(rng() % kDenRange) + 1;
      Rational r(num, den);
      r.canonicalize();
      x[j] = std::move(r);
    }

    Pattern a = pattern_at(net, x);
    const auto pre = masked_preactivations(net, a);

    // Interior certificate: active pre-activations are strictly positive by
    // definition; if every non-constant inactive one is strictly negative at
    // x, a whole neighborhood keeps the pattern, so its region is
    // full-dimensional and the output function is realized on it.
    bool certified = true;
    for (int l = 0; l < net.depth() && certified; ++l) {
      for (size_t j = 0; j < pre[l].size(); ++j) {
        const int idx = pattern_index(net, l, static_cast<int>(j));
        if (a[idx]) continue;
        const AffineFunction& z = pre[l][j];
        if (!z.is_constant() && z.eval(x) == 0) {
          certified = false;
          break;
        }
      }
    }
    if (certified) {
      ++interior;
      functions.insert(pre[net.depth()][0]);
    }
    patterns.insert(std::move(a));
  }

  SampleBounds out;
  out.lb_r1 = patterns.size();
  out.lb_r6 = functions.size();
  out.interior_samples = interior;
  return out;
}

namespace {

Integer binomial_prefix(std::uint64_t m, std::uint64_t n) {
  Integer total = 0;
  for (std::uint64_t i = 0; i <= n && i <= m; ++i) {
    Integer term;
    mpz_bin_uiui(term.get_mpz_t(), m, i);
    total += term;
  }
  return total;
}

Integer power_of_two(std::uint64_t e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return p;
}

void need_params(const std::string& name, const std::vector<std::uint64_t>& params, size_t k) {
  if (params.size() != k) {
    throw ValidationError("family '" + name + "' takes " + std::to_string(k) + " parameter(s)");
  }
}

}  // namespace

Integer family_formula(const std::string& name, const std::vector<std::uint64_t>& params) {
  if (name == "generic") {
    need_params(name, params, 2);
    return binomial_prefix(params[0], params[1]);
  }
  if (name == "central") {
    need_params(name, params, 2);
    if (params[0] < 1 || params[1] < 1) {
      throw ValidationError("family 'central' needs m >= 1 hyperplanes in dimension n >= 1");
    }
    return 2 * binomial_prefix(params[0] - 1, params[1] - 1);
  }
  if (name == "bump" || name == "t-eps" || name == "t_eps") {
    need_params("bump", params, 1);
    if (params[0] < 1) throw ValidationError("family 'bump' needs n >= 1");
    return 1 + power_of_two(2 * params[0]);
  }
  if (name == "counter" || name == "gadget") {
    need_params("counter", params, 2);
    if (params[1] < 1) throw ValidationError("family 'counter' needs n >= 1");
    return 1 + Integer(params[0]) * power_of_two(params[1]);
  }
  if (name == "power" || name == "amplify" || name == "amplification") {
    need_params("power", params, 2);
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), Integer(params[0]).get_mpz_t(), params[1]);
    return p;
  }
  throw ValidationError("unknown family '" + name +
                        "' (expected generic, central, bump, counter or power)");
}

}  // namespace reluregions
