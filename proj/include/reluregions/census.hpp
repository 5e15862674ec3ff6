#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reluregions/affine.hpp"
#include "reluregions/network.hpp"
#include "reluregions/rational.hpp"

namespace reluregions {

/// One nonempty activation region.
struct RegionRecord {
  Pattern pattern;
  int dim = -1;           // affine dimension of the region
  AffineFunction affine;  // the function the network computes on the region
};

/// One definition's entry in a census.  `value` is meaningful only when
/// `computed` is set; `note` carries the reason a count is missing, or a
/// short justification tag for a derived one.
struct DefinitionCount {
  bool computed = false;
  std::uint64_t value = 0;
  std::string note;
};

/// Deterministic work metrics.  Reports use these instead of wall-clock
/// times so that output is byte-identical across machines, runs and worker
/// counts.
struct WorkCounters {
  std::uint64_t patterns_explored = 0;    // DFS nodes expanded (partial patterns)
  std::uint64_t regions_found = 0;        // nonempty activation regions
  std::uint64_t lp_solves = 0;            // simplex runs, all purposes
  std::uint64_t adjacency_tests = 0;      // region pairs decided by an LP
  std::uint64_t adjacency_skipped = 0;    // region pairs decided structurally
};

/// Census result: one entry per region definition (defs[i] describes
/// definition i+1) plus the work spent computing them.
struct CensusReport {
  int input_dim = 0;
  std::array<DefinitionCount, 6> defs;
  WorkCounters work;
};

/// Engine knobs.  Workers only fan out independent adjacency tests; results
/// are identical for every worker count.  The ceilings (0 = unlimited) abort
/// the computation with ResourceLimitError instead of returning a partial
/// count.
struct EngineOptions {
  int workers = 1;
  std::uint64_t max_patterns = 0;
  std::uint64_t max_lps = 0;
};

/// All nonempty activation regions with exact dimensions, in DFS order
/// (neurons layer-major, the active branch explored first).
std::vector<RegionRecord> enumerate_regions(const Network& net, const EngineOptions& opts = {});

/// Exact counts for the requested definitions (subset of {1, 2, 4, 6}):
///   1 = nonempty activation regions,
///   2 = full-dimensional ("proper") activation regions,
///   4 = connected components of proper regions merged when they realize the
///       same affine function and their closures share an (n-1)-dimensional
///       face,
///   6 = distinct affine functions over proper regions.
/// Definitions 3 and 5 are never computed here (no certified general method)
/// and come back flagged "not computed".
CensusReport count_regions(const Network& net, const std::vector<int>& defs,
                           const EngineOptions& opts = {});

/// The merged-region graph behind definition 4: proper regions as nodes,
/// LP-certified merges as edges, plus the resulting component ids.
struct RegionGraph {
  std::vector<RegionRecord> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> component;  // nodes.size() entries, root ids
  std::uint64_t component_count = 0;
  WorkCounters work;
};

RegionGraph region_graph(const Network& net, const EngineOptions& opts = {});

/// Whether some proper activation region realizes exactly the function phi.
bool search_affine_piece(const Network& net, const AffineFunction& phi,
                         const EngineOptions& opts = {});

/// Counts affine functions by sweeping every coprime fraction vector with
/// numerators in [-U, U] and denominators in [1, U], testing each candidate
/// with search_affine_piece, where U = 2^coefficient_bound(net).  Faithful
/// but astronomically slow even on one-neuron networks; it exists as a
/// cross-checkable specification of the search space, not as a practical
/// counter.  Throws ResourceLimitError when U exceeds `cap`.
std::uint64_t exhaustive_search(const Network& net, const Integer& cap,
                                const EngineOptions& opts = {});

/// Decision-problem entry point: is the definition-`def` region count
/// strictly greater than k?  Exact early exits: definitions 1, 2 and 6 stream
/// monotone counters; definition 4 exits early only on the sound certificate
/// "more than k distinct proper functions" and otherwise builds the full
/// merge graph.
struct DecisionResult {
  bool more_than_k = false;
  std::uint64_t certified_at_least = 0;     // sound lower bound on the count
  std::optional<std::uint64_t> exact_count; // set when the full count was needed
  WorkCounters work;
};

DecisionResult k_region_decide_full(const Network& net, std::uint64_t k, int def,
                                    const EngineOptions& opts = {});
bool k_region_decide(const Network& net, std::uint64_t k, int def,
                     const EngineOptions& opts = {});

/// Function equality via the parallel difference network: equivalent iff the
/// difference has exactly one affine-region function and it is zero.  When
/// the networks differ, `differing` is a nonzero affine function the
/// difference realizes on some full-dimensional region.
struct EquivalenceResult {
  bool equivalent = false;
  std::optional<AffineFunction> differing;
  WorkCounters work;
};

EquivalenceResult networks_equivalent_full(const Network& a, const Network& b,
                                           const EngineOptions& opts = {});
bool networks_equivalent(const Network& a, const Network& b, const EngineOptions& opts = {});

namespace detail {
/// The sweep bound U = 2^coefficient_bound(net), exactly.
Integer exhaustive_search_bound(const Network& net);

/// The coefficient sweep with an injected bound, for unit-scale testing of
/// the loop itself.
std::uint64_t exhaustive_search_with_bound(const Network& net, const Integer& bound,
                                           const EngineOptions& opts = {});
}  // namespace detail

}  // namespace reluregions
