#include "reluregions/affine.hpp"

#include <utility>

#include "reluregions/errors.hpp"

namespace reluregions {

Rational AffineFunction::eval(const Point& x) const {
  if (x.size() != w.size()) throw ValidationError("affine eval: dimension mismatch");
  Rational acc = b;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0) acc += w[i] * x[i];
  }
  return acc;
}

bool AffineFunction::is_constant() const {
  for (const auto& c : w) {
    if (c != 0) return false;
  }
  return true;
}

bool AffineFunction::is_zero() const { return b == 0 && is_constant(); }

AffineFunction& AffineFunction::operator+=(const AffineFunction& o) {
  if (o.w.size() != w.size()) throw ValidationError("affine add: dimension mismatch");
  for (size_t i = 0; i < w.size(); ++i) w[i] += o.w[i];
  b += o.b;
  return *this;
}

AffineFunction& AffineFunction::operator-=(const AffineFunction& o) {
  if (o.w.size() != w.size()) throw ValidationError("affine sub: dimension mismatch");
  for (size_t i = 0; i < w.size(); ++i) w[i] -= o.w[i];
  b -= o.b;
  return *this;
}

AffineFunction& AffineFunction::scale(const Rational& c) {
  for (auto& v : w) v *= c;
  b *= c;
  return *this;
}

int compare(const AffineFunction& a, const AffineFunction& b) {
  if (a.w.size() != b.w.size()) return a.w.size() < b.w.size() ? -1 : 1;
  for (size_t i = 0; i < a.w.size(); ++i) {
    const int c = cmp(a.w[i], b.w[i]);
    if (c != 0) return c;
  }
  return cmp(a.b, b.b);
}

AffineFunction normalize_direction(const AffineFunction& f, int& sign) {
  sign = 0;
  Rational lead = 0;
  for (const auto& c : f.w) {
    if (c != 0) {
      lead = c;
      break;
    }
  }
  if (lead == 0) lead = f.b;
  if (lead == 0) return f;  // zero function
  sign = lead > 0 ? 1 : -1;
  AffineFunction g = f;
  g.scale(1 / lead);  // leading coefficient becomes exactly 1, so f = sign*|lead|*g
  return g;
}

int matrix_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  size_t col = 0;
  const size_t cols = rows.empty() ? 0 : rows[0].size();
  while (static_cast<size_t>(rank) < rows.size() && col < cols) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) {
      ++col;
      continue;
    }
    std::swap(rows[pivot], rows[static_cast<size_t>(rank)]);
    const std::vector<Rational>& lead = rows[static_cast<size_t>(rank)];
    for (size_t r = static_cast<size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational factor = rows[r][col] / lead[col];
      for (size_t c = col; c < cols; ++c) rows[r][c] -= factor * lead[c];
    }
    ++rank;
    ++col;
  }
  return rank;
}

}  // namespace reluregions
