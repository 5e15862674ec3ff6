#pragma once

#include <iosfwd>
#include <string>

#include "reluregions/network.hpp"

namespace reluregions {

/// Parses the JSON network document
///
///   {"input_dim": n,
///    "layers": [{"weights": [[...], ...], "biases": [...]}, ...]}
///
/// Numeric entries are JSON integers or strings like "p/q" (or "p").
/// Floating-point literals are rejected so exactness is never silently
/// lost.  The returned network is validated.  Throws ParseError on
/// malformed documents and ValidationError on bad shape.
Network parse_network(const std::string& text);
Network parse_network(std::istream& in);

/// Canonical serialization: entries with denominator 1 that fit in int64
/// are written as JSON integers, everything else as "p/q" strings.
/// Re-parsing yields an identical network.
std::string serialize_network(const Network& net);

}  // namespace reluregions
