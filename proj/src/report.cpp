#include "reluregions/report.hpp"

#include <fstream>
#include <sstream>

#include "reluregions/errors.hpp"

namespace reluregions {

const char* version() { return "0.1.0"; }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ParseError(path + ": read failed");
  return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << bytes;
  out.flush();
  if (!out) throw ParseError(path + ": write failed");
}

Json rational_json(const Rational& value) { return rational_to_string(value); }

Json affine_json(const AffineFunction& f) {
  Json w = Json::array();
  for (const Rational& c : f.w) w.push_back(rational_json(c));
  Json out;
  out["w"] = std::move(w);
  out["b"] = rational_json(f.b);
  return out;
}

Json census_json(const CensusReport& report) {
  Json defs = Json::array();
  for (int d = 1; d <= 6; ++d) {
    const DefinitionCount& entry = report.defs[d - 1];
    Json row;
    row["definition"] = d;
    row["computed"] = entry.computed;
    if (entry.computed) row["count"] = entry.value;
    if (!entry.note.empty()) row["note"] = entry.note;
    defs.push_back(std::move(row));
  }
  Json out;
  out["input_dim"] = report.input_dim;
  out["definitions"] = std::move(defs);
  return out;
}

Json work_json(const WorkCounters& work) {
  Json out;
  out["patterns_explored"] = work.patterns_explored;
  out["regions_found"] = work.regions_found;
  out["lp_solves"] = work.lp_solves;
  out["adjacency_tests"] = work.adjacency_tests;
  out["adjacency_skipped"] = work.adjacency_skipped;
  return out;
}

Json report_header(const std::string& command) {
  Json out;
  out["version"] = version();
  out["command"] = command;
  out["inputs"] = Json::array();
  return out;
}

void add_input(Json& report, const std::string& label, const std::string& path,
               const std::string& bytes) {
  Json row;
  row["label"] = label;
  row["path"] = path;
  row["fnv1a64"] = fnv1a64_hex(bytes);
  report["inputs"].push_back(std::move(row));
}

}  // namespace reluregions
