// Command-line surface for the exact linear-region toolkit.
//
// Subcommands: count, decide, equiv, gen, shallow, oracle.  Machine-readable
// JSON goes to stdout (byte-stable for fixed inputs and seeds); a one-line
// human summary with wall-clock time goes to stderr.
//
// Exit codes: 0 = success / decision "yes", 1 = decision "no",
// 2 = usage error, 3 = parse or validation error, 4 = resource limit,
// 5 = internal error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
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

namespace rr = reluregions;
using rr::Json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitResource = 4;
constexpr int kExitInternal = 5;

class Timer {
 public:
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct EngineFlags {
  int workers = 1;
  std::uint64_t max_patterns = 0;
  std::uint64_t max_lps = 0;

  rr::EngineOptions options() const {
    rr::EngineOptions opts;
    opts.workers = workers;
    opts.max_patterns = max_patterns;
    opts.max_lps = max_lps;
    return opts;
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags* flags) {
  cmd->add_option("--workers", flags->workers, "Worker threads for adjacency tests")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--max-patterns", flags->max_patterns,
                  "Abort after this many activation patterns (0 = unlimited)");
  cmd->add_option("--max-lps", flags->max_lps,
                  "Abort after this many LP solves (0 = unlimited)");
}

rr::Network load_network(Json& report, const std::string& label, const std::string& path) {
  const std::string bytes = rr::read_file(path);
  rr::add_input(report, label, path, bytes);
  return rr::parse_network(bytes);
}

rr::CnfFormula load_cnf(Json& report, const std::string& path) {
  const std::string bytes = rr::read_file(path);
  rr::add_input(report, "cnf", path, bytes);
  return rr::parse_dimacs(bytes);
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

std::string pattern_string(const rr::Pattern& pattern) {
  std::string out;
  out.reserve(pattern.size());
  for (const auto bit : pattern) out.push_back(bit ? '1' : '0');
  return out;
}

std::string census_summary(const rr::CensusReport& census) {
  std::string out;
  for (int d = 1; d <= 6; ++d) {
    const rr::DefinitionCount& entry = census.defs[d - 1];
    if (!entry.computed) continue;
    if (!out.empty()) out += " ";
    out += "R" + std::to_string(d) + "=" + std::to_string(entry.value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

struct CountArgs {
  std::string path;
  std::vector<int> defs = {1, 2, 4, 6};
  bool regions = false;
  EngineFlags engine;
};

int cmd_count(const CountArgs& args) {
  const Timer timer;
  Json report = rr::report_header("count");
  const rr::Network net = load_network(report, "network", args.path);

  bool requested[7] = {false, false, false, false, false, false, false};
  for (const int d : args.defs) {
    if (d < 1 || d > 6) {
      throw rr::ValidationError("--defs entries must lie in 1..6, got " + std::to_string(d));
    }
    requested[d] = true;
  }
  const bool shallow = net.depth() == 1;

  std::vector<int> engine_defs;
  for (const int d : {1, 2, 4, 6}) {
    if (requested[d]) engine_defs.push_back(d);
  }
  if (requested[3] && shallow && !requested[4]) engine_defs.push_back(4);

  rr::CensusReport census = rr::count_regions(net, engine_defs, args.engine.options());
  if (requested[3] && shallow) {
    census.defs[2] = {true, census.defs[3].value,
                      "equals definition 4: maximal connected pieces of a shallow network are "
                      "convex"};
    if (!requested[4]) census.defs[3] = {false, 0, "not requested"};
  }

  Json arguments;
  arguments["defs"] = args.defs;
  arguments["regions"] = args.regions;
  report["arguments"] = std::move(arguments);
  report["census"] = rr::census_json(census);
  report["work"] = rr::work_json(census.work);

  if (args.regions) {
    Json rows = Json::array();
    for (const rr::RegionRecord& rec : rr::enumerate_regions(net, args.engine.options())) {
      Json row;
      row["pattern"] = pattern_string(rec.pattern);
      row["dim"] = rec.dim;
      row["function"] = rr::affine_json(rec.affine);
      rows.push_back(std::move(row));
    }
    report["regions"] = std::move(rows);
  }

  emit(report);
  std::cerr << "count: " << census_summary(census) << " (lp_solves=" << census.work.lp_solves
            << ") [" << timer.ms() << " ms]\n";
  return kExitYes;
}

// ---------------------------------------------------------------------------
// decide
// ---------------------------------------------------------------------------

struct DecideArgs {
  std::string path;
  std::uint64_t k = 0;
  int def = 4;
  EngineFlags engine;
};

int cmd_decide(const DecideArgs& args) {
  const Timer timer;
  if (args.k < 1) throw rr::ValidationError("--k must be at least 1");
  if (args.def != 1 && args.def != 2 && args.def != 4 && args.def != 6) {
    throw rr::ValidationError("--def must be one of 1, 2, 4, 6");
  }
  Json report = rr::report_header("decide");
  const rr::Network net = load_network(report, "network", args.path);

  const rr::DecisionResult result =
      rr::k_region_decide_full(net, args.k, args.def, args.engine.options());

  Json arguments;
  arguments["k"] = args.k;
  arguments["def"] = args.def;
  report["arguments"] = std::move(arguments);
  Json decision;
  decision["more_than_k"] = result.more_than_k;
  decision["certified_at_least"] = result.certified_at_least;
  decision["exact"] = result.exact_count.has_value();
  decision["exact_count"] = result.exact_count ? Json(*result.exact_count) : Json(nullptr);
  report["decision"] = std::move(decision);
  report["work"] = rr::work_json(result.work);

  emit(report);
  std::cerr << "decide: definition " << args.def << (result.more_than_k ? " count > " : " count <= ")
            << args.k << " (certified >= " << result.certified_at_least << ") [" << timer.ms()
            << " ms]\n";
  return result.more_than_k ? kExitYes : kExitNo;
}

// ---------------------------------------------------------------------------
// equiv
// ---------------------------------------------------------------------------

struct EquivArgs {
  std::string path_a;
  std::string path_b;
  EngineFlags engine;
};

int cmd_equiv(const EquivArgs& args) {
  const Timer timer;
  Json report = rr::report_header("equiv");
  const rr::Network a = load_network(report, "network_a", args.path_a);
  const rr::Network b = load_network(report, "network_b", args.path_b);

  const rr::EquivalenceResult result = rr::networks_equivalent_full(a, b, args.engine.options());

  Json equivalence;
  equivalence["equivalent"] = result.equivalent;
  equivalence["differing_function"] =
      result.differing ? rr::affine_json(*result.differing) : Json(nullptr);
  report["equivalence"] = std::move(equivalence);
  report["work"] = rr::work_json(result.work);

  emit(report);
  std::cerr << "equiv: " << (result.equivalent ? "equivalent" : "different") << " [" << timer.ms()
            << " ms]\n";
  return result.equivalent ? kExitYes : kExitNo;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::string output;
  std::string cnf_path;
  std::string net_path;
  std::string net2_path;
  int n = 0;
  std::string eps = "1/3";
  int threshold = 1;
  int layers = 0;
  int copies = 1;
  int hyperplanes = 0;
  bool central = false;
  std::uint64_t seed = 0;
};

std::string canonical_kind(const std::string& kind) {
  // Descriptive names, with the short tags kept as accepted aliases.
  if (kind == "well" || kind == "t") return "well";
  if (kind == "bump" || kind == "t-eps") return "bump";
  if (kind == "sat-bump" || kind == "nphi") return "sat-bump";
  if (kind == "sat-ladder" || kind == "nphi-kl") return "sat-ladder";
  if (kind == "sat-counter" || kind == "nphi-star") return "sat-counter";
  if (kind == "amplify") return "amplify";
  if (kind == "arrangement") return "arrangement";
  if (kind == "example-a" || kind == "zanotti") return "example-a";
  if (kind == "example-b" || kind == "fig2") return "example-b";
  if (kind == "subtract") return "subtract";
  throw rr::ValidationError(
      "unknown generator kind '" + kind +
      "' (expected well, bump, sat-bump, sat-ladder, sat-counter, amplify, arrangement, "
      "example-a, example-b or subtract)");
}

std::uint64_t count_satisfying(const rr::CnfFormula& cnf) {
  std::uint64_t count = 0;
  std::vector<std::uint8_t> assignment(cnf.num_vars, 0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    for (int i = 0; i < cnf.num_vars; ++i) assignment[i] = (bits >> i) & 1 ? 1 : 0;
    if (cnf.satisfied_by(assignment)) ++count;
  }
  return count;
}

Json prediction_json(int definition, const rr::Integer& count, const std::string& formula) {
  Json out;
  out["status"] = "prediction";
  out["definition"] = definition;
  out["count"] = count.get_str();
  out["formula"] = formula;
  return out;
}

/// Random arrangement with exact genericity certificates: every subset of
/// k <= n hyperplanes meets in an (n-k)-flat and no n+1 share a point (for
/// the central variant: any min(k, n) normals are linearly independent).
/// Draws are retried deterministically until the certificate holds.
struct RandomArrangement {
  std::vector<rr::AffineFunction> hyperplanes;
  rr::Point orient;
};

bool arrangement_generic(const std::vector<rr::AffineFunction>& hs, int n, bool central) {
  const int m = static_cast<int>(hs.size());
  // Enumerate subsets by bitmask; sizes above n+1 are irrelevant.
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size > n + 1) continue;
    if (size == n + 1 && central) continue;  // all meet at the origin by design
    std::vector<std::vector<rr::Rational>> rows;
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      std::vector<rr::Rational> row = hs[i].w;
      if (size == n + 1) row.push_back(hs[i].b);  // inconsistency = full augmented rank
      rows.push_back(std::move(row));
    }
    if (rr::matrix_rank(std::move(rows)) != size) return false;
  }
  return true;
}

RandomArrangement random_arrangement(int n, int m, bool central, std::uint64_t seed) {
  if (n < 1) throw rr::ValidationError("--n must be at least 1");
  if (m < 1 || m > 20) throw rr::ValidationError("--hyperplanes must lie in 1..20");
  std::mt19937_64 rng(seed);
  const auto draw = [&rng](int lo, int hi) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
  };
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<rr::AffineFunction> hs;
    for (int i = 0; i < m; ++i) {
      rr::AffineFunction f = rr::AffineFunction::zero(n);
      bool zero = true;
      for (int t = 0; t < n; ++t) {
        const int c = draw(-5, 5);
        if (c != 0) zero = false;
        f.w[t] = c;
      }
      if (zero) f.w[static_cast<size_t>(draw(0, n - 1))] = 1;
      f.b = central ? 0 : draw(-5, 5);
      hs.push_back(std::move(f));
    }
    if (!arrangement_generic(hs, n, central)) continue;
    for (int point_try = 0; point_try < 64; ++point_try) {
      rr::Point orient(n);
      for (int t = 0; t < n; ++t) orient[t] = rr::Rational(draw(-9, 9));
      bool off = true;
      for (const rr::AffineFunction& f : hs) {
        if (f.eval(orient) == 0) {
          off = false;
          break;
        }
      }
      if (off) return {std::move(hs), std::move(orient)};
    }
  }
  throw rr::InternalError("random arrangement generation did not converge");
}

int cmd_gen(const GenArgs& args) {
  const Timer timer;
  const std::string kind = canonical_kind(args.kind);
  Json report = rr::report_header("gen");

  rr::Network net;
  Json prediction;  // null unless a closed form provably applies
  Json extra;       // kind-specific echo

  if (kind == "well") {
    net = rr::build_well(args.n);
  } else if (kind == "bump") {
    const rr::Rational eps = rr::rational_from_string(args.eps);
    net = rr::build_binary_bump(args.n, eps);
    if (args.n >= 2) {
      prediction = prediction_json(4, rr::family_formula("bump", {static_cast<std::uint64_t>(args.n)}),
                                   "1 + 2^(2n)");
    }
  } else if (kind == "sat-bump" || kind == "sat-ladder" || kind == "sat-counter") {
    if (args.cnf_path.empty()) throw rr::ValidationError("--cnf is required for this kind");
    const rr::CnfFormula cnf = load_cnf(report, args.cnf_path);
    extra["variables"] = cnf.num_vars;
    extra["clauses"] = cnf.num_clauses();
    if (kind == "sat-bump") {
      net = rr::build_sat_bump(cnf);
    } else if (kind == "sat-ladder") {
      const int layers = args.layers == 0 ? 2 : args.layers;
      net = rr::build_sat_ladder(cnf, args.threshold, layers);
      if (args.threshold >= 2 && cnf.num_vars <= 20 && !cnf.brute_force_satisfiable()) {
        prediction = prediction_json(4, rr::Integer(args.threshold), "K (unsatisfiable input)");
      }
    } else {
      const int layers = args.layers == 0 ? 3 : args.layers;
      net = rr::build_sat_counter(cnf, layers);
      if (cnf.num_vars >= 2 && cnf.num_vars <= 20) {
        const std::uint64_t k = count_satisfying(cnf);
        prediction = prediction_json(
            4, rr::family_formula("counter", {k, static_cast<std::uint64_t>(cnf.num_vars)}),
            "1 + k*2^n with k = " + std::to_string(k) + " satisfying assignments");
      }
    }
  } else if (kind == "amplify") {
    if (args.net_path.empty()) throw rr::ValidationError("--net is required for amplify");
    const rr::Network base = load_network(report, "network", args.net_path);
    net = rr::amplify(base, args.copies);
  } else if (kind == "arrangement") {
    const RandomArrangement arrangement =
        random_arrangement(args.n, args.hyperplanes, args.central, args.seed);
    net = rr::build_arrangement_network(arrangement.hyperplanes, arrangement.orient);
    Json hs = Json::array();
    for (const rr::AffineFunction& f : arrangement.hyperplanes) hs.push_back(rr::affine_json(f));
    Json orient = Json::array();
    for (const rr::Rational& c : arrangement.orient) orient.push_back(rr::rational_json(c));
    extra["hyperplanes"] = std::move(hs);
    extra["orient"] = std::move(orient);
    extra["central"] = args.central;
    const std::uint64_t m = static_cast<std::uint64_t>(args.hyperplanes);
    const std::uint64_t n = static_cast<std::uint64_t>(args.n);
    if (args.central) {
      prediction = prediction_json(4, rr::family_formula("central", {m, n}),
                                   "2*sum_{i=0..n-1} C(m-1,i), all definitions agree");
    } else {
      prediction = prediction_json(4, rr::family_formula("generic", {m, n}),
                                   "sum_{i=0..n} C(m,i), all definitions agree");
    }
  } else if (kind == "example-a") {
    net = rr::build_example_a();
  } else if (kind == "example-b") {
    net = rr::build_example_b();
  } else {  // subtract
    if (args.net_path.empty() || args.net2_path.empty()) {
      throw rr::ValidationError("subtract requires --net and --net2");
    }
    const rr::Network a = load_network(report, "network_a", args.net_path);
    const rr::Network b = load_network(report, "network_b", args.net2_path);
    net = rr::subtract(a, b);
  }

  rr::write_file(args.output, rr::serialize_network(net));

  Json arguments;
  arguments["kind"] = kind;
  arguments["seed"] = args.seed;
  report["arguments"] = std::move(arguments);
  Json generated;
  generated["path"] = args.output;
  generated["input_dim"] = net.input_dim;
  Json widths = Json::array();
  for (int l = 0; l < net.depth(); ++l) widths.push_back(net.width(l));
  generated["hidden_widths"] = std::move(widths);
  if (!extra.is_null()) generated["details"] = std::move(extra);
  report["generated"] = std::move(generated);
  report["prediction"] = prediction.is_null() ? Json(nullptr) : prediction;

  emit(report);
  std::cerr << "gen " << kind << ": wrote " << args.output;
  if (!prediction.is_null()) {
    std::cerr << " (predicted definition-" << prediction["definition"].get<int>()
              << " count: " << prediction["count"].get<std::string>() << ")";
  }
  std::cerr << " [" << timer.ms() << " ms]\n";
  return kExitYes;
}

// ---------------------------------------------------------------------------
// shallow
// ---------------------------------------------------------------------------

struct ShallowArgs {
  std::string path;
  EngineFlags engine;
};

int cmd_shallow(const ShallowArgs& args) {
  const Timer timer;
  Json report = rr::report_header("shallow");
  const rr::Network net = load_network(report, "network", args.path);
  if (net.depth() != 1) {
    throw rr::ValidationError("`shallow` requires exactly one hidden layer, got depth " +
                              std::to_string(net.depth()) + "; use `count` for deeper networks");
  }

  const rr::HyperplaneGrouping grouping = rr::group_hyperplanes(net);
  bool affine = true;
  Json classes = Json::array();
  Json effective = Json::array();
  for (const rr::HyperplaneClass& cls : grouping.classes) {
    const bool cancels = rr::class_cancels(cls);
    affine = affine && cancels;
    Json members = Json::array();
    for (const rr::ClassMember& member : cls.members) {
      Json row;
      row["neuron"] = member.neuron;
      row["scale"] = rr::rational_json(member.scale);
      row["output_weight"] = rr::rational_json(member.output_weight);
      members.push_back(std::move(row));
    }
    Json row;
    row["representative"] = rr::affine_json(cls.representative);
    row["members"] = std::move(members);
    row["positive_side"] = rr::rational_json(cls.positive_side);
    row["negative_side"] = rr::rational_json(cls.negative_side);
    row["cancels"] = cancels;
    classes.push_back(std::move(row));
    if (!cancels) effective.push_back(rr::affine_json(cls.representative));
  }

  const rr::CensusReport census = rr::shallow_census(net, args.engine.options());

  Json shallow;
  shallow["affine"] = affine;
  shallow["classes"] = std::move(classes);
  shallow["degenerate_neurons"] = grouping.degenerate_neurons;
  shallow["effective_hyperplanes"] = std::move(effective);
  report["shallow"] = std::move(shallow);
  report["census"] = rr::census_json(census);
  report["work"] = rr::work_json(census.work);

  emit(report);
  std::cerr << "shallow: " << (affine ? "affine" : "not affine") << ", "
            << report["shallow"]["effective_hyperplanes"].size() << " effective hyperplane(s), "
            << census_summary(census) << " [" << timer.ms() << " ms]\n";
  return kExitYes;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string mode;
  std::string path;
  std::uint64_t trials = 64;
  std::uint64_t seed = 0;
};

int cmd_oracle(const OracleArgs& args) {
  const Timer timer;
  if (args.mode != "line" && args.mode != "sample") {
    throw rr::ValidationError("oracle mode must be 'line' or 'sample', got '" + args.mode + "'");
  }
  Json report = rr::report_header("oracle");
  const rr::Network net = load_network(report, "network", args.path);
  Json arguments;
  arguments["mode"] = args.mode;

  if (args.mode == "line") {
    const rr::PiecewiseLine profile = rr::line_profile(net);
    const rr::CensusReport census = rr::line_census(net);
    Json breakpoints = Json::array();
    for (const rr::Rational& b : profile.breakpoints) breakpoints.push_back(rr::rational_json(b));
    Json pieces = Json::array();
    for (const rr::AffineFunction& f : profile.pieces) pieces.push_back(rr::affine_json(f));
    Json line;
    line["soundness"] = "exact";
    line["breakpoints"] = std::move(breakpoints);
    line["pieces"] = std::move(pieces);
    report["arguments"] = std::move(arguments);
    report["line"] = std::move(line);
    report["census"] = rr::census_json(census);
    emit(report);
    std::cerr << "oracle line: " << profile.breakpoints.size() << " breakpoint(s), "
              << census_summary(census) << " [" << timer.ms() << " ms]\n";
    return kExitYes;
  }

  const rr::SampleBounds bounds = rr::sample_lower_bounds(net, args.trials, args.seed);
  arguments["trials"] = args.trials;
  arguments["seed"] = args.seed;
  report["arguments"] = std::move(arguments);
  Json sample;
  sample["soundness"] = "lower-bound";
  sample["lower_bound_def1"] = bounds.lb_r1;
  sample["lower_bound_def6"] = bounds.lb_r6;
  sample["interior_samples"] = bounds.interior_samples;
  report["sample"] = std::move(sample);
  emit(report);
  std::cerr << "oracle sample: R1 >= " << bounds.lb_r1 << ", R6 >= " << bounds.lb_r6 << " ["
            << timer.ms() << " ms]\n";
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact linear-region analysis for ReLU networks"};
  app.require_subcommand(1);

  CountArgs count_args;
  CLI::App* count = app.add_subcommand("count", "Count linear regions under chosen definitions");
  count->add_option("network", count_args.path, "Network file (canonical JSON format)")->required();
  count->add_option("--defs", count_args.defs, "Definitions to count (subset of 1..6)")
      ->delimiter(',');
  count->add_flag("--regions", count_args.regions,
                  "Also list every region's pattern, dimension and function");
  add_engine_flags(count, &count_args.engine);

  DecideArgs decide_args;
  CLI::App* decide =
      app.add_subcommand("decide", "Decide whether the region count exceeds a threshold");
  decide->add_option("network", decide_args.path, "Network file")->required();
  decide->add_option("--k", decide_args.k, "Threshold K")->required();
  decide->add_option("--def", decide_args.def, "Definition (1, 2, 4 or 6)");
  add_engine_flags(decide, &decide_args.engine);

  EquivArgs equiv_args;
  CLI::App* equiv = app.add_subcommand("equiv", "Decide whether two networks compute one function");
  equiv->add_option("network_a", equiv_args.path_a, "First network file")->required();
  equiv->add_option("network_b", equiv_args.path_b, "Second network file")->required();
  add_engine_flags(equiv, &equiv_args.engine);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a benchmark network family member");
  gen->add_option("kind", gen_args.kind,
                  "well | bump | sat-bump | sat-ladder | sat-counter | amplify | arrangement | "
                  "example-a | example-b | subtract")
      ->required();
  gen->add_option("-o,--output", gen_args.output, "Output network file")->required();
  gen->add_option("--cnf", gen_args.cnf_path, "DIMACS CNF input (sat-* kinds)");
  gen->add_option("--net", gen_args.net_path, "Input network (amplify, subtract)");
  gen->add_option("--net2", gen_args.net2_path, "Second input network (subtract)");
  gen->add_option("--n", gen_args.n, "Input dimension (well, bump, arrangement)");
  gen->add_option("--eps", gen_args.eps, "Bump offset as a rational (bump)");
  gen->add_option("--k", gen_args.threshold, "Region threshold K (sat-ladder)");
  gen->add_option("--layers", gen_args.layers, "Total hidden layers (sat-ladder, sat-counter)");
  gen->add_option("--copies", gen_args.copies, "Number of parallel copies (amplify)");
  gen->add_option("--hyperplanes", gen_args.hyperplanes, "Hyperplane count (arrangement)");
  gen->add_flag("--central", gen_args.central, "Make the arrangement central (arrangement)");
  gen->add_option("--seed", gen_args.seed, "Random seed (arrangement)");

  ShallowArgs shallow_args;
  CLI::App* shallow =
      app.add_subcommand("shallow", "Analyze a one-hidden-layer network (affinity, census)");
  shallow->add_option("network", shallow_args.path, "Network file")->required();
  add_engine_flags(shallow, &shallow_args.engine);

  OracleArgs oracle_args;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Independent checks: 1-D sweep census or sampled lower bounds");
  oracle->add_option("mode", oracle_args.mode, "line | sample")->required();
  oracle->add_option("network", oracle_args.path, "Network file")->required();
  oracle->add_option("--trials", oracle_args.trials, "Sample count (sample mode)");
  oracle->add_option("--seed", oracle_args.seed, "Random seed (sample mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (count->parsed()) return cmd_count(count_args);
    if (decide->parsed()) return cmd_decide(decide_args);
    if (equiv->parsed()) return cmd_equiv(equiv_args);
    if (gen->parsed()) return cmd_gen(gen_args);
    if (shallow->parsed()) return cmd_shallow(shallow_args);
    if (oracle->parsed()) return cmd_oracle(oracle_args);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const rr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const rr::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const rr::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
