#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace reluregions {

/// Exact arbitrary-precision rational.  Always kept in canonical form
/// (reduced, positive denominator); all helpers below preserve that.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" with optional leading '-' on p, decimal digits only.
/// q must be positive.  Throws ParseError on anything else (whitespace,
/// exponents, hex, empty strings, zero denominators).
Rational rational_from_string(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& q);

/// True when the numerator and denominator both fit in int64.
bool fits_int64(const Rational& q);

/// Bit-length style size of a non-negative integer: ceil(log2(n+1)).
/// 0 -> 0, 1 -> 1, 2..3 -> 2, 4..7 -> 3, ...
unsigned long integer_encoding_size(const Integer& n);

/// Size of a rational entry: integers are measured as integers (the sign is
/// free), proper fractions p/q as 1 + size(|p|) + size(q).
unsigned long rational_encoding_size(const Rational& q);

/// Size of a rational always measured in fraction form, 1 + size(|p|) +
/// size(q), even when q = 1.  Never smaller than rational_encoding_size;
/// used where an upper-bound check should be as strict as possible.
unsigned long fraction_encoding_size(const Rational& q);

/// Exact squared Euclidean distance between two rational points.
Rational distance_squared(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace reluregions
