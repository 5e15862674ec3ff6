#include "reluregions/lp.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "reluregions/errors.hpp"

namespace reluregions {

LinearConstraint ge_zero(const AffineFunction& f) {
  // w.x + b >= 0  <=>  w.x >= -b
  LinearConstraint c;
  c.a = f.w;
  c.b = -f.b;
  c.rel = Rel::GE;
  return c;
}

LinearConstraint le_zero(const AffineFunction& f) {
  LinearConstraint c;
  c.a = f.w;
  c.b = -f.b;
  c.rel = Rel::LE;
  return c;
}

AffineFunction slack_function(const LinearConstraint& c) {
  if (c.rel == Rel::EQ) {
    throw ValidationError("slack_function: equality rows have no one-sided slack");
  }
  AffineFunction f;
  f.w.resize(c.a.size());
  if (c.rel == Rel::LE) {
    for (size_t i = 0; i < c.a.size(); ++i) f.w[i] = -c.a[i];
    f.b = c.b;
  } else {
    f.w = c.a;
    f.b = -c.b;
  }
  return f;
}

void LpContext::charge() {
  ++solves;
  if (budget > 0 && solves > budget) {
    throw ResourceLimitError("LP budget exceeded (limit " + std::to_string(budget) + " solves)");
  }
}

namespace {

// ---------------------------------------------------------------------------
// Fast exact scalar: fractions over int64 with __int128 intermediates.
// Any value that cannot be represented after reduction raises Q64Overflow,
// which the driver catches to re-solve with arbitrary precision.
// ---------------------------------------------------------------------------

struct Q64Overflow {};

using i128 = __int128;

inline std::int64_t checked64(i128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw Q64Overflow{};
  return static_cast<std::int64_t>(v);
}

inline i128 gcd128(i128 a, i128 b) {
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Q64 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Q64() = default;
  explicit Q64(std::int64_t n) : num(n), den(1) {}

  static Q64 make(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    Q64 q;
    if (n == 0) return q;
    i128 g = gcd128(n < 0 ? -n : n, d);
    q.num = checked64(n / g);
    q.den = checked64(d / g);
    return q;
  }

  int sgn() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
};

inline Q64 operator+(const Q64& a, const Q64& b) {
  return Q64::make(static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den,
                   static_cast<i128>(a.den) * b.den);
}
inline Q64 operator-(const Q64& a, const Q64& b) {
  return Q64::make(static_cast<i128>(a.num) * b.den - static_cast<i128>(b.num) * a.den,
                   static_cast<i128>(a.den) * b.den);
}
inline Q64 operator*(const Q64& a, const Q64& b) {
  return Q64::make(static_cast<i128>(a.num) * b.num, static_cast<i128>(a.den) * b.den);
}
inline Q64 operator/(const Q64& a, const Q64& b) {
  return Q64::make(static_cast<i128>(a.num) * b.den, static_cast<i128>(a.den) * b.num);
}
// a < b  <=>  a.num * b.den < b.num * a.den  (denominators positive)
inline bool lessthan(const Q64& a, const Q64& b) {
  return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
}

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Q64> {
  static Q64 from_rational(const Rational& q) {
    if (!fits_int64(q)) throw Q64Overflow{};
    Q64 s;
    s.num = q.get_num().get_si();
    s.den = q.get_den().get_si();
    return s;
  }
  static Rational to_rational(const Q64& s) {
    Rational r(static_cast<long>(s.num), static_cast<long>(s.den));
    r.canonicalize();
    return r;
  }
  static int sgn(const Q64& s) { return s.sgn(); }
  static bool less(const Q64& a, const Q64& b) { return lessthan(a, b); }
};

template <>
struct ScalarOps<Rational> {
  static const Rational& from_rational(const Rational& q) { return q; }
  static const Rational& to_rational(const Rational& q) { return q; }
  static int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
};

// ---------------------------------------------------------------------------
// Dictionary simplex with Bland's rule.
//
// Free variables are split (x = u - v with u, v >= 0) and every constraint is
// brought into "a . y <= b" form with one slack per row.  The dictionary
// stores, for each basic variable,  basic_i = T[i][0] + sum_j T[i][1+j] * nb_j.
// Feasibility means T[i][0] >= 0 for all rows.  Variable ids (used by Bland's
// anti-cycling rule): u_j = j, v_j = n + j, slack_i = 2n + i, then the
// phase-1 auxiliary variable.
// ---------------------------------------------------------------------------

enum class Mode { FindPoint, Maximize, PositivePoint };

template <class S>
class Simplex {
 public:
  Simplex(const ConstraintSystem& sys, const AffineFunction* obj) : n_(sys.dim) {
    // Normal-form rows a . y <= b over the split variables.
    for (const auto& row : sys.rows) {
      if (static_cast<int>(row.a.size()) != n_) {
        throw ValidationError("constraint row has wrong dimension");
      }
      if (row.rel == Rel::LE || row.rel == Rel::EQ) add_le_row(row.a, row.b, false);
      if (row.rel == Rel::GE || row.rel == Rel::EQ) add_le_row(row.a, row.b, true);
    }
    m_ = static_cast<int>(T_.size());
    nonbasic_.resize(2 * n_);
    for (int j = 0; j < 2 * n_; ++j) nonbasic_[j] = j;
    basic_.resize(m_);
    for (int i = 0; i < m_; ++i) basic_[i] = 2 * n_ + i;
    obj_.assign(2 * n_ + 1, S());
    if (obj != nullptr) {
      obj_[0] = ScalarOps<S>::from_rational(obj->b);
      for (int j = 0; j < n_; ++j) {
        S c = ScalarOps<S>::from_rational(obj->w[j]);
        obj_[1 + j] = c;
        obj_[1 + n_ + j] = S() - c;
      }
    }
  }

  LpResult solve(Mode mode) {
    if (!phase_one()) return LpResult{LpStatus::Infeasible, Rational(0), {}};
    if (mode == Mode::FindPoint) {
      return LpResult{LpStatus::Optimal, objective_value(), extract_point()};
    }
    return phase_two(mode == Mode::PositivePoint);
  }

 private:
  int n_;
  int m_ = 0;
  std::vector<std::vector<S>> T_;  // m rows, width 1 + ncols
  std::vector<S> obj_;             // real objective, updated through every pivot
  std::vector<int> basic_, nonbasic_;

  void add_le_row(const std::vector<Rational>& a, const Rational& b, bool flip) {
    std::vector<S> row(1 + 2 * n_, S());
    row[0] = ScalarOps<S>::from_rational(flip ? Rational(-b) : b);
    for (int j = 0; j < n_; ++j) {
      Rational aj = flip ? Rational(-a[j]) : a[j];
      S c = ScalarOps<S>::from_rational(aj);
      row[1 + j] = S() - c;  // coefficient of u_j in slack = b - a.y
      row[1 + n_ + j] = c;   // coefficient of v_j
    }
    T_.push_back(std::move(row));
  }

  int cols() const { return static_cast<int>(nonbasic_.size()); }

  void pivot(int r, int c, std::vector<S>* phase_obj) {
    const int width = cols() + 1;
    std::vector<S>& prow = T_[r];
    S p = prow[1 + c];
    // Rewrite row r so the entering variable is expressed in the leaving one.
    std::vector<S> nrow(width, S());
    S inv = Q_one() / p;
    nrow[0] = (S() - prow[0]) * inv;
    for (int j = 0; j < cols(); ++j) {
      if (j == c) continue;
      if (ScalarOps<S>::sgn(prow[1 + j]) != 0) nrow[1 + j] = (S() - prow[1 + j]) * inv;
    }
    nrow[1 + c] = inv;
    auto substitute = [&](std::vector<S>& row) {
      S f = row[1 + c];
      if (ScalarOps<S>::sgn(f) == 0) return;
      row[0] = row[0] + f * nrow[0];
      for (int j = 0; j < cols(); ++j) {
        if (j == c) continue;
        if (ScalarOps<S>::sgn(nrow[1 + j]) != 0) row[1 + j] = row[1 + j] + f * nrow[1 + j];
      }
      row[1 + c] = f * nrow[1 + c];
    };
    for (int i = 0; i < m_; ++i) {
      if (i != r) substitute(T_[i]);
    }
    substitute(obj_);
    if (phase_obj != nullptr) substitute(*phase_obj);
    prow = std::move(nrow);
    std::swap(basic_[r], nonbasic_[c]);
  }

  static S Q_one() {
    S s{};
    return scalar_one(s);
  }
  static Q64 scalar_one(const Q64&) { return Q64(1); }
  static Rational scalar_one(const Rational&) { return Rational(1); }

  // Bland: entering column = smallest variable id with positive reduced cost.
  int entering(const std::vector<S>& objrow) const {
    int best = -1, best_id = 0;
    for (int j = 0; j < cols(); ++j) {
      if (ScalarOps<S>::sgn(objrow[1 + j]) > 0) {
        if (best < 0 || nonbasic_[j] < best_id) {
          best = j;
          best_id = nonbasic_[j];
        }
      }
    }
    return best;
  }

  // Ratio test: tightest bound on the entering variable; ties by smallest
  // basic variable id (Bland).  Returns -1 when unbounded.
  int leaving(int c) const {
    int best = -1;
    for (int i = 0; i < m_; ++i) {
      if (ScalarOps<S>::sgn(T_[i][1 + c]) >= 0) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      // ratio_i = T[i][0] / -T[i][1+c]; compare T[i][0]*(-T[b][1+c]) vs T[b][0]*(-T[i][1+c])
      S lhs = T_[i][0] * (S() - T_[best][1 + c]);
      S rhs = T_[best][0] * (S() - T_[i][1 + c]);
      if (ScalarOps<S>::less(lhs, rhs) ||
          (!ScalarOps<S>::less(rhs, lhs) && basic_[i] < basic_[best])) {
        best = i;
      }
    }
    return best;
  }

  // Guards against solver bugs; Bland's rule itself cannot cycle.
  static constexpr long kMaxPivots = 50'000'000L;

  bool phase_one() {
    int worst = -1;
    for (int i = 0; i < m_; ++i) {
      if (ScalarOps<S>::sgn(T_[i][0]) < 0 &&
          (worst < 0 || ScalarOps<S>::less(T_[i][0], T_[worst][0]) ||
           (!ScalarOps<S>::less(T_[worst][0], T_[i][0]) && basic_[i] < basic_[worst]))) {
        worst = i;
      }
    }
    if (worst < 0) return true;  // already feasible
    // Auxiliary variable with +1 in every row; maximize its negative.
    const int aux_id = 2 * n_ + m_;
    nonbasic_.push_back(aux_id);
    for (int i = 0; i < m_; ++i) T_[i].push_back(Q_one());
    obj_.push_back(S());
    std::vector<S> phase(cols() + 1, S());
    phase[cols()] = S() - Q_one();  // phase objective: -aux
    pivot(worst, cols() - 1, &phase);
    long guard = 0;
    while (true) {
      if (++guard > kMaxPivots) throw InternalError("simplex pivot guard tripped (phase 1)");
      int c = entering(phase);
      if (c < 0) break;
      int r = leaving(c);
      if (r < 0) throw InternalError("phase-1 objective unbounded; this cannot happen");
      pivot(r, c, &phase);
    }
    if (ScalarOps<S>::sgn(phase[0]) < 0) return false;  // optimum of -aux below zero
    // Drive the auxiliary variable out of the basis if it is stuck there at 0.
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] != aux_id) continue;
      int c = -1, cid = 0;
      for (int j = 0; j < cols(); ++j) {
        if (ScalarOps<S>::sgn(T_[i][1 + j]) != 0 && (c < 0 || nonbasic_[j] < cid)) {
          c = j;
          cid = nonbasic_[j];
        }
      }
      if (c < 0) {
        // Row reads aux = 0 with no dependence on anything: drop it.
        T_.erase(T_.begin() + i);
        basic_.erase(basic_.begin() + i);
        --m_;
      } else {
        pivot(i, c, &phase);
      }
      break;
    }
    // Remove the auxiliary column.
    int aux_col = -1;
    for (int j = 0; j < cols(); ++j) {
      if (nonbasic_[j] == aux_id) aux_col = j;
    }
    if (aux_col < 0) throw InternalError("auxiliary variable still basic after phase 1");
    for (int i = 0; i < m_; ++i) T_[i].erase(T_[i].begin() + 1 + aux_col);
    obj_.erase(obj_.begin() + 1 + aux_col);
    nonbasic_.erase(nonbasic_.begin() + aux_col);
    return true;
  }

  LpResult phase_two(bool stop_when_positive) {
    long guard = 0;
    while (true) {
      if (++guard > kMaxPivots) throw InternalError("simplex pivot guard tripped (phase 2)");
      if (stop_when_positive && ScalarOps<S>::sgn(obj_[0]) > 0) {
        return LpResult{LpStatus::Optimal, objective_value(), extract_point()};
      }
      int c = entering(obj_);
      if (c < 0) {
        return LpResult{LpStatus::Optimal, objective_value(), extract_point()};
      }
      int r = leaving(c);
      if (r < 0) {
        if (!stop_when_positive) return LpResult{LpStatus::Unbounded, Rational(0), {}};
        // Walk the improving ray far enough to make the objective positive:
        // with t = (1 - z0) / zc the objective becomes exactly 1.
        S t = (Q_one() - obj_[0]) / obj_[1 + c];
        Point x = extract_point_with_ray(c, t);
        return LpResult{LpStatus::Optimal, Rational(1), std::move(x)};
      }
      pivot(r, c, nullptr);
    }
  }

  Rational objective_value() const { return ScalarOps<S>::to_rational(obj_[0]); }

  Point extract_point() const {
    std::vector<Rational> val(2 * n_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] < 2 * n_) val[basic_[i]] = ScalarOps<S>::to_rational(T_[i][0]);
    }
    Point x(n_);
    for (int j = 0; j < n_; ++j) x[j] = val[j] - val[n_ + j];
    return x;
  }

  Point extract_point_with_ray(int c, const S& t) const {
    std::vector<Rational> val(2 * n_, Rational(0));
    if (nonbasic_[c] < 2 * n_) val[nonbasic_[c]] = ScalarOps<S>::to_rational(t);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 2 * n_) continue;
      S v = T_[i][0] + T_[i][1 + c] * t;
      val[basic_[i]] = ScalarOps<S>::to_rational(v);
    }
    Point x(n_);
    for (int j = 0; j < n_; ++j) x[j] = val[j] - val[n_ + j];
    return x;
  }
};

LpResult dispatch(const ConstraintSystem& sys, const AffineFunction* obj, Mode mode,
                  LpContext* ctx) {
  if (obj != nullptr && static_cast<int>(obj->w.size()) != sys.dim) {
    throw ValidationError("objective has wrong dimension");
  }
  if (ctx != nullptr) ctx->charge();
  try {
    Simplex<Q64> s(sys, obj);
    return s.solve(mode);
  } catch (const Q64Overflow&) {
    Simplex<Rational> s(sys, obj);
    return s.solve(mode);
  }
}

}  // namespace

LpResult maximize(const ConstraintSystem& sys, const AffineFunction& f, LpContext* ctx) {
  return dispatch(sys, &f, Mode::Maximize, ctx);
}

std::optional<Point> find_point(const ConstraintSystem& sys, LpContext* ctx) {
  LpResult r = dispatch(sys, nullptr, Mode::FindPoint, ctx);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return std::move(r.point);
}

std::optional<Point> positive_point(const ConstraintSystem& sys, const AffineFunction& f,
                                    LpContext* ctx) {
  LpResult r = dispatch(sys, &f, Mode::PositivePoint, ctx);
  if (r.status == LpStatus::Infeasible) return std::nullopt;
  if (r.status != LpStatus::Optimal) throw InternalError("positive_point: unexpected status");
  if (r.value > 0) return std::move(r.point);
  return std::nullopt;
}

std::optional<Point> strict_point(const ConstraintSystem& weak, const std::vector<int>& strict_rows,
                                  LpContext* ctx, const Point* warm) {
  std::optional<Point> w;
  if (warm != nullptr) {
    w = *warm;
  } else {
    w = find_point(weak, ctx);
    if (!w) return std::nullopt;
  }
  for (int r : strict_rows) {
    const AffineFunction g = slack_function(weak.rows.at(r));
    if (g.eval(*w) > 0) continue;
    auto p = positive_point(weak, g, ctx);
    if (!p) return std::nullopt;
    // Averaging keeps every weak row satisfied and every slack already made
    // strict (positive at both endpoints or positive at one, zero never at
    // both) strictly positive.
    for (int j = 0; j < weak.dim; ++j) (*w)[j] = ((*w)[j] + (*p)[j]) / 2;
  }
  return w;
}

namespace {

// Incremental exact rank of a growing set of vectors (Gaussian elimination
// kept in echelon form).
class RankBasis {
 public:
  explicit RankBasis(int n) : n_(n) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces v against the basis; returns true (and absorbs it) when v adds a
  // new direction, false when v is already in the span.
  bool add(std::vector<Rational> v) {
    if (!reduce(v)) return false;
    int p = pivot_of(v);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  bool in_span(std::vector<Rational> v) const { return !reduce(v); }

 private:
  int n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> pivots_;

  static int pivot_of(const std::vector<Rational>& v) {
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0) return static_cast<int>(j);
    }
    return -1;
  }

  // Returns true when a nonzero remainder survives.
  bool reduce(std::vector<Rational>& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const int p = pivots_[i];
      if (v[p] == 0) continue;
      Rational factor = v[p] / rows_[i][p];
      for (int j = 0; j < n_; ++j) {
        if (rows_[i][j] != 0) v[j] -= factor * rows_[i][j];
      }
    }
    return pivot_of(v) >= 0;
  }
};

int polyhedron_dim_impl(const ConstraintSystem& sys, int min_interesting, LpContext* ctx) {
  auto w = find_point(sys, ctx);
  if (!w) return -1;
  const int n = sys.dim;
  RankBasis tight(n);
  for (const auto& row : sys.rows) {
    if (row.rel == Rel::EQ) tight.add(row.a);
  }
  if (n - tight.rank() < min_interesting) return n - tight.rank();
  for (const auto& row : sys.rows) {
    if (row.rel == Rel::EQ) continue;
    const AffineFunction g = slack_function(row);
    if (g.eval(*w) > 0) continue;
    // If the normal already lies in the span of known-tight normals, the
    // slack is constant on the solution set, hence identically zero here.
    if (tight.in_span(row.a)) continue;
    auto p = positive_point(sys, g, ctx);
    if (p) {
      for (int j = 0; j < n; ++j) (*w)[j] = ((*w)[j] + (*p)[j]) / 2;
      continue;
    }
    tight.add(row.a);
    if (n - tight.rank() < min_interesting) return n - tight.rank();
  }
  return n - tight.rank();
}

}  // namespace

int polyhedron_dim(const ConstraintSystem& sys, LpContext* ctx) {
  return polyhedron_dim_impl(sys, -(sys.dim + 2), ctx);
}

namespace detail {
int polyhedron_dim_capped(const ConstraintSystem& sys, int min_interesting, LpContext* ctx) {
  return polyhedron_dim_impl(sys, min_interesting, ctx);
}
}  // namespace detail

}  // namespace reluregions
