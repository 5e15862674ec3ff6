#include "reluregions/rational.hpp"

#include <cctype>

#include "reluregions/errors.hpp"

namespace reluregions {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  std::string num = text;
  std::string den = "1";
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  bool negative = false;
  if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
    negative = (num[0] == '-');
    num = num.substr(1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("invalid rational literal: '" + text + "'");
  }
  Integer p(num, 10);
  Integer q(den, 10);
  if (q == 0) throw ParseError("zero denominator in rational literal: '" + text + "'");
  if (negative) p = -p;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool fits_int64(const Rational& q) {
  // mpz fits_slong covers int64 on LP64 platforms (long == 64 bit).
  static_assert(sizeof(long) == 8, "LP64 platform expected");
  return q.get_num().fits_slong_p() && q.get_den().fits_slong_p();
}

unsigned long integer_encoding_size(const Integer& n) {
  if (n < 0) throw ValidationError("integer_encoding_size requires a non-negative value");
  if (n == 0) return 0;
  // ceil(log2(n+1)) equals the bit length of n for n >= 1.
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

unsigned long rational_encoding_size(const Rational& q) {
  Integer p = abs(q.get_num());
  const Integer& d = q.get_den();
  if (d == 1) return integer_encoding_size(p);
  return 1 + integer_encoding_size(p) + integer_encoding_size(d);
}

unsigned long fraction_encoding_size(const Rational& q) {
  Integer p = abs(q.get_num());
  return 1 + integer_encoding_size(p) + integer_encoding_size(q.get_den());
}

Rational distance_squared(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw ValidationError("distance_squared: dimension mismatch");
  Rational acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace reluregions
