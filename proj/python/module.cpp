#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "reluregions/census.hpp"
#include "reluregions/cnf.hpp"
#include "reluregions/errors.hpp"
#include "reluregions/gadgets.hpp"
#include "reluregions/network_io.hpp"
#include "reluregions/oracle.hpp"
#include "reluregions/report.hpp"
#include "reluregions/shallow.hpp"

namespace py = pybind11;
namespace rr = reluregions;

namespace {

// Rationals cross the boundary as canonical "p/q" strings so no precision is
// ever lost to floating point.
rr::Point point_from_strings(const std::vector<std::string>& coords) {
  rr::Point p;
  p.reserve(coords.size());
  for (const std::string& c : coords) p.push_back(rr::rational_from_string(c));
  return p;
}

rr::EngineOptions make_options(int workers, std::uint64_t max_patterns, std::uint64_t max_lps) {
  rr::EngineOptions opts;
  opts.workers = workers;
  opts.max_patterns = max_patterns;
  opts.max_lps = max_lps;
  return opts;
}

py::dict census_to_dict(const rr::CensusReport& report) {
  py::list defs;
  for (int d = 1; d <= 6; ++d) {
    const rr::DefinitionCount& entry = report.defs[d - 1];
    py::dict row;
    row["definition"] = d;
    row["computed"] = entry.computed;
    if (entry.computed) row["count"] = entry.value;
    if (!entry.note.empty()) row["note"] = entry.note;
    defs.append(row);
  }
  py::dict work;
  work["patterns_explored"] = report.work.patterns_explored;
  work["regions_found"] = report.work.regions_found;
  work["lp_solves"] = report.work.lp_solves;
  work["adjacency_tests"] = report.work.adjacency_tests;
  work["adjacency_skipped"] = report.work.adjacency_skipped;
  py::dict out;
  out["input_dim"] = report.input_dim;
  out["definitions"] = defs;
  out["work"] = work;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact linear-region analysis for ReLU networks";
  m.attr("__version__") = rr::version();

  py::register_exception<rr::Error>(m, "Error");
  py::register_exception<rr::ParseError>(m, "ParseError");
  py::register_exception<rr::ValidationError>(m, "ValidationError");
  py::register_exception<rr::ResourceLimitError>(m, "ResourceLimitError");
  py::register_exception<rr::InternalError>(m, "InternalError");

  py::class_<rr::Network>(m, "Network")
      .def_readonly("input_dim", &rr::Network::input_dim)
      .def_property_readonly("depth", &rr::Network::depth)
      .def_property_readonly("hidden_count", &rr::Network::hidden_count)
      .def("evaluate",
           [](const rr::Network& net, const std::vector<std::string>& x) {
             return rr::rational_to_string(rr::evaluate(net, point_from_strings(x)));
           },
           py::arg("x"), "Evaluate at a point of rational strings; returns a rational string.")
      .def("__repr__", [](const rr::Network& net) {
        return "<reluregions.Network input_dim=" + std::to_string(net.input_dim) +
               " depth=" + std::to_string(net.depth()) + ">";
      });

  m.def("parse_network", [](const std::string& text) { return rr::parse_network(text); },
        py::arg("text"), "Parse the canonical JSON network format.");
  m.def("serialize_network", &rr::serialize_network, py::arg("net"));

  m.def(
      "count_regions",
      [](const rr::Network& net, const std::vector<int>& defs, int workers,
         std::uint64_t max_patterns, std::uint64_t max_lps) {
        return census_to_dict(
            rr::count_regions(net, defs, make_options(workers, max_patterns, max_lps)));
      },
      py::arg("net"), py::arg("defs") = std::vector<int>{1, 2, 4, 6}, py::arg("workers") = 1,
      py::arg("max_patterns") = 0, py::arg("max_lps") = 0);

  m.def(
      "k_region_decide",
      [](const rr::Network& net, std::uint64_t k, int def, int workers,
         std::uint64_t max_patterns, std::uint64_t max_lps) {
        return rr::k_region_decide(net, k, def, make_options(workers, max_patterns, max_lps));
      },
      py::arg("net"), py::arg("k"), py::arg("def") = 4, py::arg("workers") = 1,
      py::arg("max_patterns") = 0, py::arg("max_lps") = 0,
      "True when the network has strictly more than k regions under the definition.");

  m.def(
      "networks_equivalent",
      [](const rr::Network& a, const rr::Network& b, int workers, std::uint64_t max_patterns,
         std::uint64_t max_lps) {
        return rr::networks_equivalent(a, b, make_options(workers, max_patterns, max_lps));
      },
      py::arg("a"), py::arg("b"), py::arg("workers") = 1, py::arg("max_patterns") = 0,
      py::arg("max_lps") = 0);

  m.def("is_affine_shallow", &rr::is_affine_shallow, py::arg("net"),
        "Polynomial-time affinity decision for one-hidden-layer networks.");
  m.def(
      "shallow_census",
      [](const rr::Network& net, std::uint64_t max_patterns, std::uint64_t max_lps) {
        return census_to_dict(rr::shallow_census(net, make_options(1, max_patterns, max_lps)));
      },
      py::arg("net"), py::arg("max_patterns") = 0, py::arg("max_lps") = 0);

  m.def("line_census",
        [](const rr::Network& net) { return census_to_dict(rr::line_census(net)); },
        py::arg("net"), "Exact sweep census for one-input networks; uses no linear programs.");

  m.def(
      "sample_lower_bounds",
      [](const rr::Network& net, std::uint64_t trials, std::uint64_t seed) {
        const rr::SampleBounds b = rr::sample_lower_bounds(net, trials, seed);
        py::dict out;
        out["lb_def1"] = b.lb_r1;
        out["lb_def6"] = b.lb_r6;
        out["interior_samples"] = b.interior_samples;
        return out;
      },
      py::arg("net"), py::arg("trials") = 64, py::arg("seed") = 0);

  m.def(
      "family_formula",
      [](const std::string& name, const std::vector<std::uint64_t>& params) {
        return rr::family_formula(name, params).get_str();
      },
      py::arg("name"), py::arg("params"),
      "Closed-form count for a generated family, as a decimal string.");

  // Generators.  CNF formulas are passed as DIMACS text.
  m.def("build_well", &rr::build_well, py::arg("n"));
  m.def(
      "build_binary_bump",
      [](int n, const std::string& eps) {
        return rr::build_binary_bump(n, rr::rational_from_string(eps));
      },
      py::arg("n"), py::arg("eps") = "1/3");
  m.def("build_sat_bump",
        [](const std::string& dimacs) { return rr::build_sat_bump(rr::parse_dimacs(dimacs)); },
        py::arg("dimacs"));
  m.def(
      "build_sat_ladder",
      [](const std::string& dimacs, int k, int layers) {
        return rr::build_sat_ladder(rr::parse_dimacs(dimacs), k, layers);
      },
      py::arg("dimacs"), py::arg("k"), py::arg("layers") = 2);
  m.def(
      "build_sat_counter",
      [](const std::string& dimacs, int layers) {
        return rr::build_sat_counter(rr::parse_dimacs(dimacs), layers);
      },
      py::arg("dimacs"), py::arg("layers") = 3);
  m.def(
      "build_arrangement_network",
      [](const std::vector<std::pair<std::vector<std::string>, std::string>>& hyperplanes,
         const std::vector<std::string>& orient) {
        std::vector<rr::AffineFunction> hs;
        for (const auto& [w, b] : hyperplanes) {
          std::vector<rr::Rational> coeffs;
          for (const std::string& c : w) coeffs.push_back(rr::rational_from_string(c));
          hs.emplace_back(std::move(coeffs), rr::rational_from_string(b));
        }
        return rr::build_arrangement_network(hs, point_from_strings(orient));
      },
      py::arg("hyperplanes"), py::arg("orient"),
      "Hyperplanes are (weights, bias) pairs of rational strings.");
  m.def("amplify", &rr::amplify, py::arg("net"), py::arg("k"));
  m.def("subtract", &rr::subtract, py::arg("a"), py::arg("b"));
  m.def("build_example_a", &rr::build_example_a);
  m.def("build_example_b", &rr::build_example_b);
}
