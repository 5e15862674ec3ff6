#include "reluregions/census.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>
#include <utility>

#include "reluregions/encoding.hpp"
#include "reluregions/errors.hpp"
#include "reluregions/gadgets.hpp"
#include "reluregions/lp.hpp"
#include "reluregions/polyhedron.hpp"

namespace reluregions {

namespace {

/// Fixed number of adjacency tests per batch.  The batch boundary is where
/// merge results are applied and budgets are checked, so keeping it constant
/// makes every counter and every result independent of the worker count.
constexpr std::size_t kWaveSize = 16;

using Signature = std::vector<std::pair<std::uint32_t, int>>;  // (hyperplane id, side)

/// Interns oriented hyperplanes (scale-normalized affine functions) so
/// regions can compare their bounding halfspaces by integer id.
class HyperplaneTable {
 public:
  std::uint32_t id_of(const AffineFunction& g) {
    const auto it = ids_.try_emplace(g, static_cast<std::uint32_t>(ids_.size())).first;
    return it->second;
  }

 private:
  std::map<AffineFunction, std::uint32_t> ids_;
};

/// Everything a counting pass needs about one nonempty region.
struct VisitedRegion {
  Pattern pattern;
  bool proper = false;
  int exact_dim = -1;  // filled only when exact dimensions were requested
  AffineFunction affine;
  Point witness;                      // a point of the region itself
  ConstraintSystem rows;              // weak closure system (kept only for merge input)
  Signature signature;                // sorted by hyperplane id (kept only for merge input)
  std::vector<std::uint32_t> row_ids; // hyperplane id of each row (merge input)
};

/// Slack of row c at point p: nonnegative exactly when p satisfies c, zero
/// exactly on the boundary.  (EQ rows never occur in enumeration systems.)
Rational row_slack(const LinearConstraint& c, const Point& p) {
  Rational dot = 0;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (c.a[t] != 0) dot += c.a[t] * p[t];
  }
  return c.rel == Rel::GE ? dot - c.b : c.b - dot;
}

/// One-LP relative-interior probe: a point satisfying every row of `sys`
/// whose slack is moreover strictly positive on every row listed in
/// `strict`.  Maximizes the common slack margin t in an augmented LP and
/// stops at the first vertex with t > 0, so a certificate costs one solve.
std::optional<Point> interior_point(const ConstraintSystem& sys, const std::vector<int>& strict,
                                    LpContext* ctx) {
  ConstraintSystem aug;
  aug.dim = sys.dim + 1;
  aug.rows.reserve(sys.rows.size());
  std::vector<char> is_strict(sys.rows.size(), 0);
  for (const int i : strict) is_strict[i] = 1;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    LinearConstraint row = sys.rows[i];
    row.a.push_back(is_strict[i] ? (row.rel == Rel::GE ? Rational(-1) : Rational(1)) : Rational(0));
    aug.rows.push_back(std::move(row));
  }
  AffineFunction margin = AffineFunction::zero(aug.dim);
  margin.w[sys.dim] = 1;
  std::optional<Point> p = positive_point(aug, margin, ctx);
  if (!p) return std::nullopt;
  p->pop_back();
  return p;
}

struct EnumerationNeeds {
  bool properness = false;
  bool exact_dim = false;    // implies properness
  bool merge_data = false;
  bool proper_only = false;  // strict walk: visit only full-dimensional
                             // regions (excludes properness / exact_dim)
};

using Visit = std::function<bool(VisitedRegion&&)>;

/// Depth-first walk over activation patterns, neurons in layer-major order,
/// the active branch first.  A branch is pruned as soon as the weak
/// relaxation of the partial pattern (plus strictness of the branching
/// neuron for the active side) is infeasible, which is sound because deeper
/// systems only add constraints.  Two devices settle most branch decisions
/// without an LP: each node carries a witness point of its partial system
/// (evaluating the neuron there certifies its own branch), and the
/// coordinate intervals implied by single-variable rows give an enclosing
/// box whose min/max of the neuron's pre-activation can prove the other
/// branch empty.
class Enumerator {
 public:
  Enumerator(const Network& net, const EngineOptions& opts, EnumerationNeeds needs)
      : net_(net), n_(net.input_dim), depth_(net.depth()), opts_(opts), needs_(needs) {
    net_.validate();
    ctx_.budget = opts_.max_lps;
    bits_.assign(net_.hidden_count(), 0);
    weak_.dim = n_;
    lo_.resize(n_);
    hi_.resize(n_);
    starts_.resize(depth_);
    int acc = 0;
    for (int l = 0; l < depth_; ++l) {
      starts_[l] = acc;
      acc += net_.width(l);
    }
    layer_affines_.resize(depth_);
  }

  /// Returns false when the visitor stopped the walk early.
  bool run(const Visit& visit) {
    if (depth_ == 0) {
      bump_patterns();
      ++regions_;
      VisitedRegion v;
      v.proper = true;
      v.exact_dim = needs_.exact_dim ? n_ : -1;
      v.affine = AffineFunction{net_.layers.back().weights[0], net_.layers.back().biases[0]};
      v.witness = Point(n_, Rational(0));
      v.rows.dim = n_;
      return visit(std::move(v));
    }
    compute_layer(0);
    const Point origin(n_, Rational(0));
    return needs_.proper_only ? dfs_strict(0, 0, origin, visit) : dfs(0, 0, origin, visit);
  }

  WorkCounters work() const {
    WorkCounters w;
    w.patterns_explored = patterns_;
    w.regions_found = regions_;
    w.lp_solves = ctx_.solves;
    return w;
  }

 private:
  void bump_patterns() {
    ++patterns_;
    if (opts_.max_patterns != 0 && patterns_ > opts_.max_patterns) {
      throw ResourceLimitError("activation-pattern budget exceeded after " +
                               std::to_string(opts_.max_patterns) + " partial patterns");
    }
  }

  /// Pre-activations of hidden layer l as functions of the input, masking
  /// the previous layer's outputs by the current bits.
  void compute_layer(int l) {
    const Layer& layer = net_.layers[l];
    std::vector<AffineFunction>& cur = layer_affines_[l];
    cur.assign(layer.rows(), AffineFunction::zero(n_));
    for (int r = 0; r < layer.rows(); ++r) {
      AffineFunction& z = cur[r];
      z.b = layer.biases[r];
      if (l == 0) {
        z.w = layer.weights[r];
        continue;
      }
      const std::vector<AffineFunction>& prev = layer_affines_[l - 1];
      for (int j = 0; j < layer.cols(); ++j) {
        if (!bits_[starts_[l - 1] + j]) continue;
        const Rational& c = layer.weights[r][j];
        if (c == 0) continue;
        for (int t = 0; t < n_; ++t) z.w[t] += c * prev[j].w[t];
        z.b += c * prev[j].b;
      }
    }
  }

  AffineFunction output_affine() const {
    const Layer& out = net_.layers.back();
    AffineFunction f = AffineFunction::zero(n_);
    f.b = out.biases[0];
    const std::vector<AffineFunction>& prev = layer_affines_[depth_ - 1];
    for (int j = 0; j < out.cols(); ++j) {
      if (!bits_[starts_[depth_ - 1] + j]) continue;
      const Rational& c = out.weights[0][j];
      if (c == 0) continue;
      for (int t = 0; t < n_; ++t) f.w[t] += c * prev[j].w[t];
      f.b += c * prev[j].b;
    }
    return f;
  }

  void push_row(LinearConstraint row, bool active, const AffineFunction& z) {
    weak_.rows.push_back(std::move(row));
    if (active) active_idx_.push_back(static_cast<int>(weak_.rows.size()) - 1);
    row_active_.push_back(active ? 1 : 0);
    if (needs_.merge_data) {
      int sign = 0;
      const AffineFunction g = normalize_direction(z, sign);
      sig_.push_back({table_.id_of(g), active ? sign : -sign});
    }
    bound_marks_.push_back(propagate_row(z, active));
  }

  void pop_row() {
    for (std::uint8_t k = bound_marks_.back(); k > 0; --k) {
      const BoundUndo& u = bound_undo_.back();
      (u.upper ? hi_ : lo_)[u.var] = u.old;
      bound_undo_.pop_back();
    }
    bound_marks_.pop_back();
    if (row_active_.back()) active_idx_.pop_back();
    row_active_.pop_back();
    weak_.rows.pop_back();
    if (needs_.merge_data) sig_.pop_back();
  }

  /// One-pass bound tightening from the new halfspace: reading the row as
  /// sum_t a_t x_t >= rhs, each variable with all other terms bounded above
  /// gets the implied one-sided bound.  Returns the number of bounds changed
  /// (so pop_row can undo them).  Single-variable rows reduce to an exact
  /// interval update.
  std::uint8_t propagate_row(const AffineFunction& z, bool active) {
    // Active means z >= 0 on the branch, inactive z <= 0 (i.e. -z >= 0).
    const int sign = active ? 1 : -1;
    std::uint8_t updates = 0;
    for (int s = 0; s < n_; ++s) {
      if (z.w[s] == 0) continue;
      Rational residual = sign * -z.b;
      bool bounded = true;
      for (int t = 0; t < n_ && bounded; ++t) {
        if (t == s || z.w[t] == 0) continue;
        const Rational a = sign * z.w[t];
        const std::optional<Rational>& other = a > 0 ? hi_[t] : lo_[t];
        if (other) {
          residual -= a * *other;
        } else {
          bounded = false;
        }
      }
      if (!bounded) continue;
      const Rational a_s = sign * z.w[s];
      const Rational v = residual / a_s;
      const bool lower = a_s > 0;
      std::optional<Rational>& bound = lower ? lo_[s] : hi_[s];
      if (bound && (lower ? *bound >= v : *bound <= v)) continue;
      bound_undo_.push_back({s, !lower, bound});
      bound = v;
      ++updates;
    }
    return updates;
  }

  /// Max (or min) of z over the coordinate box, or nullopt when the needed
  /// side of some coordinate is unbounded.  The box contains the feasible
  /// set, so these are sound one-sided certificates.
  std::optional<Rational> box_extreme(const AffineFunction& z, bool maximize) const {
    Rational r = z.b;
    for (int t = 0; t < n_; ++t) {
      if (z.w[t] == 0) continue;
      const bool want_hi = maximize == (z.w[t] > 0);
      const std::optional<Rational>& bound = want_hi ? hi_[t] : lo_[t];
      if (!bound) return std::nullopt;
      r += z.w[t] * *bound;
    }
    return r;
  }

  /// A cheap candidate for a strictly interior point: per coordinate the box
  /// midpoint, or one unit inside a single-sided bound, or zero.  Purely a
  /// heuristic; callers validate it by exact evaluation.
  Point box_midpoint() const {
    Point p(n_);
    for (int t = 0; t < n_; ++t) {
      if (lo_[t] && hi_[t]) {
        p[t] = (*lo_[t] + *hi_[t]) / 2;
      } else if (lo_[t]) {
        p[t] = *lo_[t] + 1;
      } else if (hi_[t]) {
        p[t] = *hi_[t] - 1;
      }
    }
    return p;
  }

  /// Whether every row (or every active row) holds strictly at p.
  bool rows_strict_at(const Point& p, bool actives_only) const {
    if (actives_only) {
      for (const int i : active_idx_) {
        if (row_slack(weak_.rows[i], p) <= 0) return false;
      }
      return true;
    }
    for (const LinearConstraint& c : weak_.rows) {
      if (row_slack(c, p) <= 0) return false;
    }
    return true;
  }

  bool dfs(int layer, int j, const Point& w, const Visit& visit) {
    bump_patterns();
    if (layer == depth_) return leaf(w, visit);
    if (j == 0 && layer > 0) compute_layer(layer);

    const AffineFunction& z = layer_affines_[layer][j];
    const int flat = starts_[layer] + j;
    const int next_layer = j + 1 < net_.width(layer) ? layer : layer + 1;
    const int next_j = j + 1 < net_.width(layer) ? j + 1 : 0;

    if (z.is_constant()) {
      // The bit is forced: a constant pre-activation is active exactly when
      // it is positive, on every input.
      bits_[flat] = z.b > 0 ? 1 : 0;
      return dfs(next_layer, next_j, w, visit);
    }

    const Rational zw = z.eval(w);

    // Active branch: needs a point of the partial weak system with z > 0.
    {
      std::optional<Point> cw;
      if (zw > 0) {
        cw = w;
      } else {
        const std::optional<Rational> top = box_extreme(z, true);
        if (!top || *top > 0) cw = positive_point(weak_, z, &ctx_);
        // else: z <= 0 on the whole enclosing box, branch provably empty
      }
      if (cw) {
        push_row(ge_zero(z), true, z);
        bits_[flat] = 1;
        const bool keep_going = dfs(next_layer, next_j, *cw, visit);
        pop_row();
        if (!keep_going) return false;
      }
    }

    // Inactive branch: the weak system plus z <= 0 must stay feasible.
    {
      std::optional<Point> cw;
      bool need_lp = false;
      if (zw <= 0) {
        cw = w;
      } else {
        const std::optional<Rational> bottom = box_extreme(z, false);
        need_lp = !bottom || *bottom <= 0;
        // else: z > 0 on the whole enclosing box, branch provably empty
      }
      bool keep_going = true;
      if (cw || need_lp) {
        push_row(le_zero(z), false, z);
        if (need_lp) cw = find_point(weak_, &ctx_);
        if (cw) {
          bits_[flat] = 0;
          keep_going = dfs(next_layer, next_j, *cw, visit);
        }
        pop_row();
      }
      if (!keep_going) return false;
    }
    return true;
  }

  /// Strict-mode walk: visits exactly the full-dimensional activation
  /// regions.  Invariant: the carried witness satisfies every pushed row
  /// strictly, so it certifies its own side of each new hyperplane for free,
  /// and when the hyperplane passes exactly through the witness both open
  /// sides are nonempty (the witness has an open neighbourhood inside the
  /// cell) and a child witness is an exact rational step along the normal.
  /// Only a genuine side flip costs an interior-probe LP, unless the
  /// enclosing box already rules that side out.  Leaves need no further
  /// certificates: the witness is already strictly interior.
  bool dfs_strict(int layer, int j, const Point& w, const Visit& visit) {
    bump_patterns();
    if (layer == depth_) return leaf(w, visit);
    if (j == 0 && layer > 0) compute_layer(layer);

    const AffineFunction& z = layer_affines_[layer][j];
    const int flat = starts_[layer] + j;
    const int next_layer = j + 1 < net_.width(layer) ? layer : layer + 1;
    const int next_j = j + 1 < net_.width(layer) ? j + 1 : 0;

    if (z.is_constant()) {
      bits_[flat] = z.b > 0 ? 1 : 0;
      return dfs_strict(next_layer, next_j, w, visit);
    }

    const Rational zw = z.eval(w);

    const auto explore = [&](bool active) -> bool {
      std::optional<Point> cw;
      bool pushed = false;
      if (active ? zw > 0 : zw < 0) {
        cw = w;
      } else if (zw == 0) {
        cw = nudged(w, z, active);
      } else {
        // Witness on the far side: try the box certificate, then one LP for
        // a point with every row (including the flipped one) strict.
        const std::optional<Rational> reach = box_extreme(z, active);
        if (reach && (active ? *reach <= 0 : *reach >= 0)) return true;
        push_row(active ? ge_zero(z) : le_zero(z), active, z);
        pushed = true;
        all_rows_.resize(weak_.rows.size());
        std::iota(all_rows_.begin(), all_rows_.end(), 0);
        cw = interior_point(weak_, all_rows_, &ctx_);
      }
      bool keep_going = true;
      if (cw) {
        if (!pushed) {
          push_row(active ? ge_zero(z) : le_zero(z), active, z);
          pushed = true;
        }
        bits_[flat] = active ? 1 : 0;
        keep_going = dfs_strict(next_layer, next_j, *cw, visit);
      }
      if (pushed) pop_row();
      return keep_going;
    };

    if (!explore(true)) return false;
    return explore(false);
  }

  /// With z(w) = 0 and every pushed row strict at w, both open sides of z
  /// meet the interior of the current cell: steps from w along +/- grad z by
  /// half of the largest step that keeps every pushed row strict.
  Point nudged(const Point& w, const AffineFunction& z, bool positive) const {
    Rational step(1);
    for (const LinearConstraint& c : weak_.rows) {
      Rational rate(0);
      for (int t = 0; t < n_; ++t) rate += c.a[t] * z.w[t];
      if (!positive) rate = -rate;
      if (c.rel == Rel::LE) rate = -rate;  // now the slack's rate of change
      if (rate >= 0) continue;
      const Rational limit = row_slack(c, w) / (rate * -2);
      if (limit < step) step = limit;
    }
    Point p = w;
    const Rational delta = positive ? step : -step;
    for (int t = 0; t < n_; ++t) {
      if (z.w[t] != 0) p[t] += delta * z.w[t];
    }
    return p;
  }

  bool leaf(const Point& w, const Visit& visit) {
    std::optional<Point> pt;
    bool proper = false;

    if (needs_.proper_only) {
      // The strict walk's witness is already strictly interior, so the leaf
      // is proper by construction.
      pt = w;
      proper = true;
    } else if (needs_.properness && !needs_.exact_dim) {
      // Full-dimensionality certificate, cheapest route first: a point with
      // every row strict proves dim = n and region membership at once.  Try
      // the inherited witness and the box midpoint by plain evaluation, then
      // one interior-probe LP; only regions that genuinely lack an all-strict
      // point (improper ones) fall through to the membership test below.
      if (rows_strict_at(w, false)) {
        pt = w;
      } else {
        Point mid = box_midpoint();
        if (rows_strict_at(mid, false)) pt = std::move(mid);
      }
      if (!pt) {
        all_rows_.resize(weak_.rows.size());
        std::iota(all_rows_.begin(), all_rows_.end(), 0);
        pt = interior_point(weak_, all_rows_, &ctx_);
      }
      if (pt) {
        proper = true;
      } else if (active_idx_.size() < weak_.rows.size()) {
        if (rows_strict_at(w, true)) {
          pt = w;
        } else {
          pt = interior_point(weak_, active_idx_, &ctx_);
        }
      }
    } else {
      // Region membership only: the active rows must hold strictly.
      if (rows_strict_at(w, true)) {
        pt = w;
      } else {
        pt = interior_point(weak_, active_idx_, &ctx_);
      }
    }
    if (!pt) return true;  // empty region: pruning could not see the joint strictness fail

    ++regions_;
    VisitedRegion v;
    v.pattern = bits_;
    v.witness = std::move(*pt);
    v.affine = output_affine();
    if (needs_.exact_dim) {
      v.exact_dim = polyhedron_dim(weak_, &ctx_);
      v.proper = v.exact_dim == n_;
    } else {
      v.proper = proper;
    }
    if (needs_.merge_data && v.proper) {
      v.rows = weak_;
      v.row_ids.reserve(sig_.size());
      for (const auto& [id, side] : sig_) v.row_ids.push_back(id);
      Signature sig = sig_;
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      v.signature = std::move(sig);
    }
    return visit(std::move(v));
  }

  const Network& net_;
  const int n_;
  const int depth_;
  const EngineOptions opts_;
  const EnumerationNeeds needs_;

  LpContext ctx_;
  std::uint64_t patterns_ = 0;
  std::uint64_t regions_ = 0;

  struct BoundUndo {
    int var;
    bool upper;
    std::optional<Rational> old;
  };

  Pattern bits_;
  std::vector<int> starts_;
  std::vector<std::vector<AffineFunction>> layer_affines_;
  ConstraintSystem weak_;
  std::vector<int> active_idx_;
  std::vector<char> row_active_;
  std::vector<int> all_rows_;
  Signature sig_;
  HyperplaneTable table_;
  std::vector<std::optional<Rational>> lo_;
  std::vector<std::optional<Rational>> hi_;
  std::vector<BoundUndo> bound_undo_;
  std::vector<std::uint8_t> bound_marks_;
};

// ---------------------------------------------------------------------------
// Definition-4 merging
// ---------------------------------------------------------------------------

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep the smallest index as the root
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

constexpr std::uint32_t kNoSeparator = 0xffffffffu;

/// Number of hyperplanes carrying the two regions on opposite sides (capped
/// at 2, which is all callers need).  When the count is exactly one, `sep`
/// receives that hyperplane's id.
int separating_count(const Signature& x, const Signature& y, std::uint32_t& sep) {
  int count = 0;
  sep = kNoSeparator;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size() && count < 2) {
    if (x[i].first < y[j].first) {
      ++i;
    } else if (y[j].first < x[i].first) {
      ++j;
    } else {
      if (x[i].second != y[j].second) {
        sep = count == 0 ? x[i].first : kNoSeparator;
        ++count;
      }
      ++i;
      ++j;
    }
  }
  return count;
}

/// Combined closure system of two regions with duplicate rows dropped;
/// `ids` receives the hyperplane id of each kept row.
ConstraintSystem dedupe_union(const ConstraintSystem& a, const std::vector<std::uint32_t>& a_ids,
                              const ConstraintSystem& b, const std::vector<std::uint32_t>& b_ids,
                              std::vector<std::uint32_t>& ids) {
  ConstraintSystem out;
  out.dim = a.dim;
  std::set<std::tuple<int, std::vector<Rational>, Rational>> seen;
  const auto add = [&](const LinearConstraint& c, std::uint32_t id) {
    if (seen.insert({static_cast<int>(c.rel), c.a, c.b}).second) {
      out.rows.push_back(c);
      ids.push_back(id);
    }
  };
  for (std::size_t i = 0; i < a.rows.size(); ++i) add(a.rows[i], a_ids[i]);
  for (std::size_t i = 0; i < b.rows.size(); ++i) add(b.rows[i], b_ids[i]);
  return out;
}

/// Runs `count` independent tasks, fanning out to at most `workers` threads.
/// Task outputs must go to per-index slots; exceptions are re-thrown in index
/// order so behavior matches the sequential run.
void run_batch(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
        try {
          task(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct MergeOutcome {
  std::uint64_t components = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> roots;
};

/// Union-find over proper regions grouped by identical affine function.
/// Within a group, pairs are tried nearest witnesses first (nearby regions
/// merge early, so the same-component skip kills most of the quadratic
/// schedule); a pair separated by two distinct hyperplanes cannot share an
/// (n-1)-dimensional face and is skipped without an LP.  The rest run in
/// fixed-size batches so results and counters never depend on the worker
/// count: a pair with exactly one separating hyperplane shares a facet
/// exactly when the combined system has a point on that hyperplane strictly
/// inside every other row (one interior-probe LP); the rare pairs whose
/// boundary systems differ without any separator fall back to the dimension
/// of the combined closure.
MergeOutcome merge_regions(int n, const std::vector<AffineFunction>& funcs,
                           const std::vector<Point>& witnesses,
                           const std::vector<ConstraintSystem>& rows,
                           const std::vector<Signature>& sigs,
                           const std::vector<std::vector<std::uint32_t>>& row_ids,
                           const EngineOptions& opts, WorkCounters& work) {
  const std::uint32_t count = static_cast<std::uint32_t>(funcs.size());
  UnionFind uf(count);
  MergeOutcome out;

  std::map<AffineFunction, std::vector<std::uint32_t>> groups;
  for (std::uint32_t i = 0; i < count; ++i) groups[funcs[i]].push_back(i);

  struct Candidate {
    Rational d2;
    std::uint32_t a, b;
    std::uint32_t sep;  // separating hyperplane id, or kNoSeparator
  };

  for (const auto& [fn, members] : groups) {
    if (members.size() < 2) continue;

    std::vector<Candidate> cands;
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const std::uint32_t a = members[x];
        const std::uint32_t b = members[y];
        std::uint32_t sep = kNoSeparator;
        if (separating_count(sigs[a], sigs[b], sep) >= 2) {
          ++work.adjacency_skipped;
          continue;
        }
        cands.push_back({distance_squared(witnesses[a], witnesses[b]), a, b, sep});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& p, const Candidate& q) {
      if (p.d2 != q.d2) return p.d2 < q.d2;
      if (p.a != q.a) return p.a < q.a;
      return p.b < q.b;
    });

    std::uint64_t group_components = members.size();
    std::size_t pos = 0;
    while (pos < cands.size() && group_components > 1) {
      std::vector<std::size_t> wave;
      while (pos < cands.size() && wave.size() < kWaveSize) {
        const Candidate& c = cands[pos];
        ++pos;
        if (uf.find(c.a) == uf.find(c.b)) {
          ++work.adjacency_skipped;
          continue;
        }
        wave.push_back(pos - 1);
      }
      if (wave.empty()) break;

      std::vector<ConstraintSystem> combined(wave.size());
      std::vector<std::vector<std::uint32_t>> combined_ids(wave.size());
      for (std::size_t k = 0; k < wave.size(); ++k) {
        const Candidate& c = cands[wave[k]];
        combined[k] = dedupe_union(rows[c.a], row_ids[c.a], rows[c.b], row_ids[c.b],
                                   combined_ids[k]);
      }
      std::vector<std::uint64_t> solves(wave.size(), 0);
      std::vector<char> adjacent(wave.size(), 0);
      run_batch(wave.size(), opts.workers, [&](std::size_t k) {
        LpContext ctx;
        const Candidate& c = cands[wave[k]];
        if (c.sep != kNoSeparator) {
          // Rows on the separator pin it to equality; everything else must
          // admit a strictly interior point of the shared facet.  Cheap
          // sufficient test first: the witness segment crosses the separator
          // at a rational point, and if every other row is strict there (a
          // plain evaluation) the facet is shared.  Rows proportional to the
          // separator vanish at the crossing by construction.
          bool decided = false;
          std::size_t r0 = combined[k].rows.size();
          for (std::size_t r = 0; r < combined[k].rows.size(); ++r) {
            if (combined_ids[k][r] == c.sep) {
              r0 = r;
              break;
            }
          }
          if (r0 < combined[k].rows.size()) {
            const Rational sa = row_slack(combined[k].rows[r0], witnesses[c.a]);
            const Rational sb = row_slack(combined[k].rows[r0], witnesses[c.b]);
            if ((sa > 0) != (sb > 0) && sa != sb) {
              const Rational t = sa / (sa - sb);
              Point p(combined[k].dim);
              for (int d = 0; d < combined[k].dim; ++d) {
                p[d] = witnesses[c.a][d] + t * (witnesses[c.b][d] - witnesses[c.a][d]);
              }
              bool strict_elsewhere = true;
              for (std::size_t r = 0; r < combined[k].rows.size() && strict_elsewhere; ++r) {
                if (combined_ids[k][r] == c.sep) continue;
                strict_elsewhere = row_slack(combined[k].rows[r], p) > 0;
              }
              if (strict_elsewhere) {
                adjacent[k] = 1;
                decided = true;
              }
            }
          }
          if (!decided) {
            std::vector<int> strict;
            strict.reserve(combined[k].rows.size());
            for (std::size_t r = 0; r < combined[k].rows.size(); ++r) {
              if (combined_ids[k][r] != c.sep) strict.push_back(static_cast<int>(r));
            }
            adjacent[k] = interior_point(combined[k], strict, &ctx) ? 1 : 0;
          }
        } else {
          const int d = detail::polyhedron_dim_capped(combined[k], n - 1, &ctx);
          adjacent[k] = d == n - 1 ? 1 : 0;
        }
        solves[k] = ctx.solves;
      });

      for (std::size_t k = 0; k < wave.size(); ++k) {
        work.lp_solves += solves[k];
        ++work.adjacency_tests;
      }
      if (opts.max_lps != 0 && work.lp_solves > opts.max_lps) {
        throw ResourceLimitError("lp budget exceeded after " + std::to_string(work.lp_solves) +
                                 " solves during region merging");
      }
      for (std::size_t k = 0; k < wave.size(); ++k) {
        if (!adjacent[k]) continue;
        const Candidate& c = cands[wave[k]];
        if (uf.unite(c.a, c.b)) {
          --group_components;
          out.edges.emplace_back(std::min(c.a, c.b), std::max(c.a, c.b));
        }
      }
    }
  }

  out.roots.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) out.roots[i] = uf.find(i);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (out.roots[i] == i) ++out.components;
  }
  return out;
}

void require_supported_def(int def) {
  if (def != 1 && def != 2 && def != 4 && def != 6) {
    throw ValidationError("definition " + std::to_string(def) +
                          " is not computed by the census engine (supported: 1, 2, 4, 6)");
  }
}

}  // namespace

std::vector<RegionRecord> enumerate_regions(const Network& net, const EngineOptions& opts) {
  Enumerator e(net, opts, {true, true, false});
  std::vector<RegionRecord> out;
  e.run([&](VisitedRegion&& v) {
    out.push_back({std::move(v.pattern), v.exact_dim, std::move(v.affine)});
    return true;
  });
  return out;
}

CensusReport count_regions(const Network& net, const std::vector<int>& defs,
                           const EngineOptions& opts) {
  bool want[7] = {false, false, false, false, false, false, false};
  for (int d : defs) {
    require_supported_def(d);
    want[d] = true;
  }

  EnumerationNeeds needs;
  needs.proper_only = !want[1];
  needs.properness = want[1] && (want[2] || want[4] || want[6]);
  needs.merge_data = want[4];

  Enumerator e(net, opts, needs);
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  std::set<AffineFunction> distinct;
  std::vector<AffineFunction> funcs;
  std::vector<Point> witnesses;
  std::vector<ConstraintSystem> rows;
  std::vector<Signature> sigs;
  std::vector<std::vector<std::uint32_t>> ids;

  e.run([&](VisitedRegion&& v) {
    ++r1;
    if (v.proper) {
      ++r2;
      if (want[4] || want[6]) distinct.insert(v.affine);
      if (want[4]) {
        funcs.push_back(std::move(v.affine));
        witnesses.push_back(std::move(v.witness));
        rows.push_back(std::move(v.rows));
        sigs.push_back(std::move(v.signature));
        ids.push_back(std::move(v.row_ids));
      }
    }
    return true;
  });

  WorkCounters work = e.work();
  CensusReport report;
  report.input_dim = net.input_dim;
  for (int d = 1; d <= 6; ++d) {
    DefinitionCount& entry = report.defs[d - 1];
    if (d == 3 || d == 5) {
      entry = {false, 0, "not computed: open problem"};
    } else if (!want[d]) {
      entry = {false, 0, "not requested"};
    }
  }
  if (want[1]) report.defs[0] = {true, r1, ""};
  if (want[2]) report.defs[1] = {true, r2, ""};
  if (want[4]) {
    if (distinct.size() == 1) {
      // Every proper region realizes the same affine function, and proper
      // closures cover the whole space, so by continuity the network
      // computes that function everywhere: one connected region, no
      // adjacency work needed.
      report.defs[3] = {true, 1, ""};
    } else {
      const MergeOutcome merged =
          merge_regions(net.input_dim, funcs, witnesses, rows, sigs, ids, opts, work);
      report.defs[3] = {true, merged.components, ""};
    }
  }
  if (want[6]) report.defs[5] = {true, distinct.size(), ""};
  report.work = work;
  return report;
}

RegionGraph region_graph(const Network& net, const EngineOptions& opts) {
  EnumerationNeeds needs;
  needs.merge_data = true;
  needs.proper_only = true;
  Enumerator e(net, opts, needs);
  RegionGraph graph;
  std::vector<AffineFunction> funcs;
  std::vector<Point> witnesses;
  std::vector<ConstraintSystem> rows;
  std::vector<Signature> sigs;
  std::vector<std::vector<std::uint32_t>> ids;

  e.run([&](VisitedRegion&& v) {
    if (!v.proper) return true;
    graph.nodes.push_back({std::move(v.pattern), net.input_dim, v.affine});
    funcs.push_back(std::move(v.affine));
    witnesses.push_back(std::move(v.witness));
    rows.push_back(std::move(v.rows));
    sigs.push_back(std::move(v.signature));
    ids.push_back(std::move(v.row_ids));
    return true;
  });

  graph.work = e.work();
  MergeOutcome merged =
      merge_regions(net.input_dim, funcs, witnesses, rows, sigs, ids, opts, graph.work);
  graph.edges = std::move(merged.edges);
  graph.component = std::move(merged.roots);
  graph.component_count = merged.components;
  return graph;
}

bool search_affine_piece(const Network& net, const AffineFunction& phi, const EngineOptions& opts) {
  if (phi.dim() != net.input_dim) {
    throw ValidationError("candidate function dimension does not match the network input");
  }
  EnumerationNeeds needs;
  needs.proper_only = true;
  Enumerator e(net, opts, needs);
  bool found = false;
  e.run([&](VisitedRegion&& v) {
    if (v.proper && v.affine == phi) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

DecisionResult k_region_decide_full(const Network& net, std::uint64_t k, int def,
                                    const EngineOptions& opts) {
  require_supported_def(def);
  DecisionResult result;

  if (def == 1 || def == 2) {
    EnumerationNeeds needs;
    needs.proper_only = def == 2;
    Enumerator e(net, opts, needs);
    std::uint64_t seen = 0;
    const bool completed = e.run([&](VisitedRegion&& v) {
      if (def == 1 || v.proper) ++seen;
      return seen <= k;
    });
    result.more_than_k = seen > k;
    result.certified_at_least = seen;
    if (completed) result.exact_count = seen;
    result.work = e.work();
    return result;
  }

  if (def == 6) {
    EnumerationNeeds needs;
    needs.proper_only = true;
    Enumerator e(net, opts, needs);
    std::set<AffineFunction> distinct;
    const bool completed = e.run([&](VisitedRegion&& v) {
      if (v.proper) distinct.insert(std::move(v.affine));
      return distinct.size() <= k;
    });
    result.more_than_k = distinct.size() > k;
    result.certified_at_least = distinct.size();
    if (completed) result.exact_count = distinct.size();
    result.work = e.work();
    return result;
  }

  // Definition 4.  Distinct proper functions are a lower bound on the
  // connected count, so exceeding k during enumeration is already a sound
  // "yes"; a single function everywhere means exactly one region (the
  // network is affine); otherwise the full merge graph decides.
  EnumerationNeeds needs;
  needs.merge_data = true;
  needs.proper_only = true;
  Enumerator e(net, opts, needs);
  std::set<AffineFunction> distinct;
  std::vector<AffineFunction> funcs;
  std::vector<Point> witnesses;
  std::vector<ConstraintSystem> rows;
  std::vector<Signature> sigs;
  std::vector<std::vector<std::uint32_t>> ids;
  const bool completed = e.run([&](VisitedRegion&& v) {
    if (!v.proper) return true;
    distinct.insert(v.affine);
    funcs.push_back(std::move(v.affine));
    witnesses.push_back(std::move(v.witness));
    rows.push_back(std::move(v.rows));
    sigs.push_back(std::move(v.signature));
    ids.push_back(std::move(v.row_ids));
    return distinct.size() <= k;
  });
  result.work = e.work();
  if (!completed) {
    result.more_than_k = true;
    result.certified_at_least = distinct.size();
    return result;
  }
  if (distinct.size() == 1) {
    result.more_than_k = 1 > k;
    result.certified_at_least = 1;
    result.exact_count = 1;
    return result;
  }
  const MergeOutcome merged =
      merge_regions(net.input_dim, funcs, witnesses, rows, sigs, ids, opts, result.work);
  result.more_than_k = merged.components > k;
  result.certified_at_least = merged.components;
  result.exact_count = merged.components;
  return result;
}

bool k_region_decide(const Network& net, std::uint64_t k, int def, const EngineOptions& opts) {
  return k_region_decide_full(net, k, def, opts).more_than_k;
}

EquivalenceResult networks_equivalent_full(const Network& a, const Network& b,
                                           const EngineOptions& opts) {
  if (a.input_dim != b.input_dim) {
    throw ValidationError("networks with different input dimensions cannot be compared");
  }
  const Network diff = subtract(a, b);
  EnumerationNeeds needs;
  needs.proper_only = true;
  Enumerator e(diff, opts, needs);
  EquivalenceResult result;
  result.equivalent = true;
  e.run([&](VisitedRegion&& v) {
    if (v.proper && !v.affine.is_zero()) {
      result.equivalent = false;
      result.differing = std::move(v.affine);
      return false;
    }
    return true;
  });
  result.work = e.work();
  return result;
}

bool networks_equivalent(const Network& a, const Network& b, const EngineOptions& opts) {
  return networks_equivalent_full(a, b, opts).equivalent;
}

namespace detail {

Integer exhaustive_search_bound(const Network& net) {
  Integer u;
  mpz_ui_pow_ui(u.get_mpz_t(), 2, coefficient_bound(net));
  return u;
}

std::uint64_t exhaustive_search_with_bound(const Network& net, const Integer& bound,
                                           const EngineOptions& opts) {
  net.validate();
  if (bound < 1) throw ValidationError("sweep bound must be at least 1");
  const int k = net.input_dim + 1;

  // Odometer over (a_1..a_k, b_1..b_k), a_i in [-U, U], b_i in [1, U].
  std::vector<Integer> digits(2 * k);
  for (int i = 0; i < k; ++i) digits[i] = -bound;
  for (int i = k; i < 2 * k; ++i) digits[i] = 1;

  std::uint64_t found = 0;
  while (true) {
    bool coprime = true;
    for (int i = 0; i < k && coprime; ++i) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), digits[i].get_mpz_t(), digits[k + i].get_mpz_t());
      coprime = g == 1;
    }
    if (coprime) {
      AffineFunction phi = AffineFunction::zero(net.input_dim);
      for (int i = 0; i < net.input_dim; ++i) {
        phi.w[i] = Rational(digits[i]) / Rational(digits[k + i]);
      }
      phi.b = Rational(digits[k - 1]) / Rational(digits[2 * k - 1]);
      if (search_affine_piece(net, phi, opts)) ++found;
    }

    int p = 0;
    while (p < 2 * k) {
      if (digits[p] < bound) {
        ++digits[p];
        break;
      }
      digits[p] = p < k ? -bound : Integer(1);
      ++p;
    }
    if (p == 2 * k) break;
  }
  return found;
}

}  // namespace detail

std::uint64_t exhaustive_search(const Network& net, const Integer& cap, const EngineOptions& opts) {
  net.validate();
  if (cap < 1) throw ValidationError("sweep cap must be at least 1");
  const unsigned long long exponent = coefficient_bound(net);
  // 2^exponent > cap exactly when the exponent reaches cap's bit length;
  // checking exponents avoids materializing the astronomically large bound.
  if (exponent >= mpz_sizeinbase(cap.get_mpz_t(), 2)) {
    throw ResourceLimitError("coefficient sweep bound 2^" + std::to_string(exponent) +
                             " exceeds the cap; use count_regions instead");
  }
  return detail::exhaustive_search_with_bound(net, detail::exhaustive_search_bound(net), opts);
}

}  // namespace reluregions
