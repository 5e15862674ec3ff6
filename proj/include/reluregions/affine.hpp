#pragma once

#include <vector>

#include "reluregions/rational.hpp"

namespace reluregions {

using Point = std::vector<Rational>;

/// An affine function x -> w.x + b on R^n.  Stored exactly; comparisons are
/// exact and total (lexicographic over (w, b)), so AffineFunction can key
/// ordered containers and deduplicate function sets.
struct AffineFunction {
  std::vector<Rational> w;
  Rational b = 0;

  AffineFunction() = default;
  AffineFunction(std::vector<Rational> weights, Rational bias)
      : w(std::move(weights)), b(std::move(bias)) {}

  /// Constant-zero function on n variables.
  static AffineFunction zero(int n) { return AffineFunction(std::vector<Rational>(n, 0), 0); }

  int dim() const { return static_cast<int>(w.size()); }

  Rational eval(const Point& x) const;

  /// True when every weight is zero (the function is constant).
  bool is_constant() const;

  /// True when the function is identically zero.
  bool is_zero() const;

  AffineFunction& operator+=(const AffineFunction& o);
  AffineFunction& operator-=(const AffineFunction& o);
  AffineFunction& scale(const Rational& c);

  friend AffineFunction operator+(AffineFunction a, const AffineFunction& b) { return a += b; }
  friend AffineFunction operator-(AffineFunction a, const AffineFunction& b) { return a -= b; }
  friend AffineFunction operator-(AffineFunction a) {
    a.scale(-1);
    return a;
  }
};

/// Three-way lexicographic comparison over (w..., b).
int compare(const AffineFunction& a, const AffineFunction& b);

inline bool operator==(const AffineFunction& a, const AffineFunction& b) { return compare(a, b) == 0; }
inline bool operator!=(const AffineFunction& a, const AffineFunction& b) { return compare(a, b) != 0; }
inline bool operator<(const AffineFunction& a, const AffineFunction& b) { return compare(a, b) < 0; }

/// Scales f so its first nonzero coefficient (scanning w then b) becomes 1.
/// Returns the scaled copy and sets `sign` to the sign (+1/-1) of that
/// leading coefficient, i.e. f = sign * |lead| * result.  The zero function
/// is returned unchanged with sign 0.  Two functions are proportional by a
/// positive/negative factor exactly when they normalize to the same result
/// with equal/opposite signs.
AffineFunction normalize_direction(const AffineFunction& f, int& sign);

/// Exact rank of a list of row vectors (Gaussian elimination over Q).
int matrix_rank(std::vector<std::vector<Rational>> rows);

}  // namespace reluregions
