#include "reluregions/shallow.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "reluregions/errors.hpp"
#include "reluregions/polyhedron.hpp"

namespace reluregions {

namespace {

void require_shallow(const Network& net) {
  net.validate();
  if (net.depth() != 1) {
    throw ValidationError("expected a network with exactly one hidden layer, got depth " +
                          std::to_string(net.depth()));
  }
}

/// Visits every full-dimensional open cell of the arrangement, passing the
/// side vector (+1 / -1 per hyperplane, in order).  Depth-first, positive
/// side first; each node carries a point strictly inside its partial cell,
/// so a branch costs an LP only when the parent witness lies on the wrong
/// side of the new hyperplane.
void walk_cells(const EffectiveArrangement& arr, LpContext* ctx,
                const std::function<void(const std::vector<int>&)>& visit) {
  ConstraintSystem sys;
  sys.dim = arr.dim;
  std::vector<int> all_rows;
  std::vector<int> sides;

  std::function<void(std::size_t, const Point&)> walk = [&](std::size_t i, const Point& w) {
    if (i == arr.hyperplanes.size()) {
      visit(sides);
      return;
    }
    const AffineFunction& g = arr.hyperplanes[i];
    const Rational value = g.eval(w);
    for (const int side : {+1, -1}) {
      sys.rows.push_back(side > 0 ? ge_zero(g) : le_zero(g));
      all_rows.push_back(static_cast<int>(sys.rows.size()) - 1);
      sides.push_back(side);
      std::optional<Point> cw;
      if ((side > 0 && value > 0) || (side < 0 && value < 0)) {
        cw = w;
      } else {
        cw = strict_point(sys, all_rows, ctx);
      }
      if (cw) walk(i + 1, *cw);
      sides.pop_back();
      all_rows.pop_back();
      sys.rows.pop_back();
    }
  };

  const Point origin(arr.dim, Rational(0));
  walk(0, origin);
}

}  // namespace

HyperplaneGrouping group_hyperplanes(const Network& net) {
  require_shallow(net);
  const Layer& hidden = net.layers[0];
  const Layer& out = net.layers[1];

  HyperplaneGrouping grouping;
  std::map<AffineFunction, std::size_t> index_of;
  for (int j = 0; j < hidden.rows(); ++j) {
    const AffineFunction z{hidden.weights[j], hidden.biases[j]};
    if (z.is_constant()) {
      grouping.degenerate_neurons.push_back(j);
      continue;
    }
    int sign = 0;
    const AffineFunction rep = normalize_direction(z, sign);
    const auto [it, fresh] = index_of.try_emplace(rep, grouping.classes.size());
    if (fresh) {
      HyperplaneClass cls;
      cls.representative = rep;
      grouping.classes.push_back(std::move(cls));
    }
    HyperplaneClass& cls = grouping.classes[it->second];

    // z == scale * representative; read the scale off the representative's
    // leading (== 1) coefficient.
    Rational scale;
    for (int t = 0; t < rep.dim(); ++t) {
      if (rep.w[t] != 0) {
        scale = z.w[t] / rep.w[t];
        break;
      }
    }
    const Rational& a = out.weights[0][j];
    cls.members.push_back({j, scale, a});
    if (scale > 0) {
      cls.positive_side += a * scale;
    } else {
      cls.negative_side += a * scale;
    }
  }
  return grouping;
}

bool class_cancels(const HyperplaneClass& cls) {
  return cls.positive_side == cls.negative_side;
}

bool is_affine_shallow(const Network& net) {
  const HyperplaneGrouping grouping = group_hyperplanes(net);
  return std::all_of(grouping.classes.begin(), grouping.classes.end(), class_cancels);
}

EffectiveArrangement effective_arrangement(const Network& net) {
  const HyperplaneGrouping grouping = group_hyperplanes(net);
  EffectiveArrangement arr;
  arr.dim = net.input_dim;
  for (const HyperplaneClass& cls : grouping.classes) {
    if (!class_cancels(cls)) arr.hyperplanes.push_back(cls.representative);
  }
  return arr;
}

std::uint64_t count_arrangement_cells(const EffectiveArrangement& arr, LpContext* ctx) {
  if (arr.dim <= 0) throw ValidationError("arrangement dimension must be positive");
  LpContext local;
  if (ctx == nullptr) ctx = &local;
  std::uint64_t cells = 0;
  walk_cells(arr, ctx, [&](const std::vector<int>&) { ++cells; });
  return cells;
}

CensusReport shallow_census(const Network& net, const EngineOptions& opts) {
  require_shallow(net);
  const int n = net.input_dim;
  const int h = net.width(0);

  LpContext ctx;
  ctx.budget = opts.max_lps;

  // Definitions 1 and 2: exhaust activation patterns.  Each pattern is
  // classified from its own constraint system, a route that shares nothing
  // with the arrangement analysis below.
  if (h >= 63) {
    throw ResourceLimitError("too many hidden neurons (" + std::to_string(h) +
                             ") for the activation-pattern sweep");
  }
  const std::uint64_t total = std::uint64_t{1} << h;
  if (opts.max_patterns != 0 && total > opts.max_patterns) {
    throw ResourceLimitError("activation-pattern sweep needs " + std::to_string(total) +
                             " patterns, over the configured budget");
  }
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  Pattern a(h, 0);
  for (std::uint64_t p = 0; p < total; ++p) {
    for (int j = 0; j < h; ++j) a[j] = (p >> j) & 1 ? 1 : 0;
    const int d = region_status(net, a, &ctx);
    if (d >= 0) {
      ++r1;
      if (d == n) ++r2;
    }
  }

  // Shared affine part: output bias, degenerate neurons, and canceled
  // classes (whose two sides contribute one and the same slope).
  const HyperplaneGrouping grouping = group_hyperplanes(net);
  const Layer& hidden = net.layers[0];
  const Layer& out = net.layers[1];
  AffineFunction common = AffineFunction::zero(n);
  common.b = out.biases[0];
  for (const int j : grouping.degenerate_neurons) {
    if (hidden.biases[j] > 0) common.b += out.weights[0][j] * hidden.biases[j];
  }

  struct Effective {
    AffineFunction rep;
    Rational positive_side;
    Rational negative_side;
  };
  std::vector<Effective> effective;
  EffectiveArrangement arr;
  arr.dim = n;
  for (const HyperplaneClass& cls : grouping.classes) {
    if (class_cancels(cls)) {
      for (int t = 0; t < n; ++t) common.w[t] += cls.positive_side * cls.representative.w[t];
      common.b += cls.positive_side * cls.representative.b;
    } else {
      arr.hyperplanes.push_back(cls.representative);
      effective.push_back({cls.representative, cls.positive_side, cls.negative_side});
    }
  }

  // Definitions 3, 4, 6 from the cells of the effective arrangement.
  std::uint64_t cells = 0;
  std::set<AffineFunction> distinct;
  walk_cells(arr, &ctx, [&](const std::vector<int>& sides) {
    ++cells;
    AffineFunction f = common;
    for (std::size_t i = 0; i < effective.size(); ++i) {
      const Rational& slope = sides[i] > 0 ? effective[i].positive_side : effective[i].negative_side;
      for (int t = 0; t < n; ++t) f.w[t] += slope * effective[i].rep.w[t];
      f.b += slope * effective[i].rep.b;
    }
    distinct.insert(std::move(f));
  });

  CensusReport report;
  report.input_dim = n;
  report.defs[0] = {true, r1, ""};
  report.defs[1] = {true, r2, ""};
  report.defs[2] = {true, cells,
                    "equals definition 4: maximal connected pieces of a shallow network are convex"};
  report.defs[3] = {true, cells, ""};
  report.defs[4] = {false, 0, "not computed: open problem"};
  report.defs[5] = {true, distinct.size(), ""};
  report.work.patterns_explored = total;
  report.work.regions_found = r1;
  report.work.lp_solves = ctx.solves;
  return report;
}

}  // namespace reluregions
