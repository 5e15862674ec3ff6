#include "reluregions/network_io.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <sstream>

#include "reluregions/errors.hpp"

namespace reluregions {

namespace {

using nlohmann::ordered_json;

Rational entry_from_json(const ordered_json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) {
      const auto u = v.get<unsigned long long>();
      if (u > static_cast<unsigned long long>(INT64_MAX)) {
        throw ParseError(where + ": integer literal out of int64 range, write it as a string");
      }
      return Rational(static_cast<long>(u));
    }
    return Rational(static_cast<long>(v.get<long long>()));
  }
  if (v.is_string()) {
    try {
      return rational_from_string(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_float()) {
    throw ParseError(where + ": floating-point literals are not accepted; use integers or \"p/q\" strings");
  }
  throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

Network network_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("network document must be a JSON object");
  if (!doc.contains("input_dim") || !doc["input_dim"].is_number_integer()) {
    throw ParseError("network document needs an integer \"input_dim\"");
  }
  if (!doc.contains("layers") || !doc["layers"].is_array()) {
    throw ParseError("network document needs a \"layers\" array");
  }
  Network net;
  net.input_dim = doc["input_dim"].get<int>();
  const auto& layers = doc["layers"];
  for (size_t l = 0; l < layers.size(); ++l) {
    const std::string where = "layers[" + std::to_string(l) + "]";
    const auto& jl = layers[l];
    if (!jl.is_object() || !jl.contains("weights") || !jl.contains("biases") ||
        !jl["weights"].is_array() || !jl["biases"].is_array()) {
      throw ParseError(where + ": expected {\"weights\": [[...]], \"biases\": [...]}");
    }
    Layer layer;
    const auto& jw = jl["weights"];
    for (size_t r = 0; r < jw.size(); ++r) {
      if (!jw[r].is_array()) throw ParseError(where + ".weights[" + std::to_string(r) + "]: expected an array");
      std::vector<Rational> row;
      row.reserve(jw[r].size());
      for (size_t c = 0; c < jw[r].size(); ++c) {
        row.push_back(entry_from_json(
            jw[r][c], where + ".weights[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
      layer.weights.push_back(std::move(row));
    }
    const auto& jb = jl["biases"];
    for (size_t r = 0; r < jb.size(); ++r) {
      layer.biases.push_back(entry_from_json(jb[r], where + ".biases[" + std::to_string(r) + "]"));
    }
    net.layers.push_back(std::move(layer));
  }
  net.validate();
  return net;
}

ordered_json entry_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
    return ordered_json(static_cast<long long>(q.get_num().get_si()));
  }
  return ordered_json(rational_to_string(q));
}

}  // namespace

Network parse_network(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return network_from_json(doc);
}

Network parse_network(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string serialize_network(const Network& net) {
  ordered_json doc;
  doc["input_dim"] = net.input_dim;
  doc["layers"] = ordered_json::array();
  for (const auto& layer : net.layers) {
    ordered_json jl;
    jl["weights"] = ordered_json::array();
    for (const auto& row : layer.weights) {
      ordered_json jr = ordered_json::array();
      for (const auto& q : row) jr.push_back(entry_to_json(q));
      jl["weights"].push_back(std::move(jr));
    }
    jl["biases"] = ordered_json::array();
    for (const auto& q : layer.biases) jl["biases"].push_back(entry_to_json(q));
    doc["layers"].push_back(std::move(jl));
  }
  return doc.dump(2) + "\n";
}

}  // namespace reluregions
