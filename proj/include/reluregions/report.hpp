#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "reluregions/census.hpp"

namespace reluregions {

/// Key order in reports is insertion order, so emitted documents are
/// byte-stable across runs and platforms.
using Json = nlohmann::ordered_json;

/// Library/CLI version stamped into every report.
const char* version();

/// FNV-1a over a byte string; reports carry it as a 16-digit hex string so
/// golden files can pin their inputs.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// Reads a whole file, throwing ParseError with the path on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

/// Exact JSON forms; rationals are rendered as canonical "p/q" strings.
Json rational_json(const Rational& value);
Json affine_json(const AffineFunction& f);
Json census_json(const CensusReport& report);
Json work_json(const WorkCounters& work);

/// Report skeleton: version, command echo, and input digests.
Json report_header(const std::string& command);
void add_input(Json& report, const std::string& label, const std::string& path,
               const std::string& bytes);

}  // namespace reluregions
