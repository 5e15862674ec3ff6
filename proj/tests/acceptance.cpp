// Acceptance gate: runs every shipping criterion end to end and prints one
// PASS/FAIL line per criterion.  Exit code is the number of failed criteria.
//
// Every count checked here is verified through two routes that share no
// algorithmic path: the census engine on one side, and closed forms,
// brute-force pattern sweeps, assignment enumeration or the 1-D breakpoint
// oracle on the other.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "reluregions/affine.hpp"
#include "reluregions/census.hpp"
#include "reluregions/cnf.hpp"
#include "reluregions/encoding.hpp"
#include "reluregions/errors.hpp"
#include "reluregions/gadgets.hpp"
#include "reluregions/lp.hpp"
#include "reluregions/network.hpp"
#include "reluregions/oracle.hpp"
#include "reluregions/polyhedron.hpp"
#include "reluregions/rational.hpp"
#include "reluregions/shallow.hpp"

using namespace reluregions;

namespace {

// ---------------------------------------------------------------------------
// Shared coefficient audit (criterion 11, checked inline during 1-10).
// ---------------------------------------------------------------------------

struct CoefficientAudit {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t networks = 0;
  std::string first_violation;

  void check_function(const AffineFunction& f, unsigned long long bound, const char* where) {
    auto one = [&](const Rational& c) {
      ++checked;
      if (fraction_encoding_size(c) > bound) {
        ++violations;
        if (first_violation.empty()) {
          first_violation = std::string(where) + ": coefficient " + rational_to_string(c) +
                            " has encoding size " + std::to_string(fraction_encoding_size(c)) +
                            " > bound " + std::to_string(bound);
        }
      }
    };
    for (const Rational& c : f.w) one(c);
    one(f.b);
  }

  // Audits every affine function the engine realizes on the network's
  // activation regions against that network's own coefficient bound.
  void check_network(const Network& net, const char* where) {
    ++networks;
    const unsigned long long bound = coefficient_bound(net);
    for (const RegionRecord& r : enumerate_regions(net)) check_function(r.affine, bound, where);
  }
};

CoefficientAudit g_audit;

// ---------------------------------------------------------------------------
// Small helpers.
// ---------------------------------------------------------------------------

Rational frac(long num, long den) { return Rational(num) / Rational(den); }

int hidden_count(const Network& net) {
  int s = 0;
  for (int l = 0; l < net.depth(); ++l) s += net.width(l);
  return s;
}

std::uint64_t count_def(const Network& net, int def) {
  CensusReport r = count_regions(net, {def});
  return r.defs[def - 1].value;
}

// Binomial prefix sum: number of cells of m generic hyperplanes in R^n.
std::uint64_t generic_cells(int m, int n) {
  std::uint64_t total = 0;
  for (int i = 0; i <= n; ++i) {
    std::uint64_t c = 1;
    for (int j = 0; j < i; ++j) c = c * static_cast<std::uint64_t>(m - j) / (j + 1);
    total += c;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Criterion runner scaffolding.
// ---------------------------------------------------------------------------

struct Verdict {
  bool pass = false;
  std::string detail;
};

int run_criterion(int index, const std::string& name, double budget_seconds,
                  const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("unexpected exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_budget = budget_seconds <= 0 || seconds < budget_seconds;
  const bool pass = v.pass && in_budget;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " criterion-" << (index < 10 ? "0" : "") << index << " "
       << name << " [" << static_cast<long>(seconds * 1000) << " ms";
  if (budget_seconds > 0) line << ", budget " << static_cast<long>(budget_seconds) << " s";
  line << "]: " << v.detail;
  if (v.pass && !in_budget) line << " -- over time budget";
  std::cout << line.str() << std::endl;
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Criterion 1: corner-bump closed form 1 + 2^(2n) for n in {1, 2}.
// ---------------------------------------------------------------------------

Verdict criterion_bump_closed_form() {
  Verdict v;
  std::ostringstream msg;
  bool ok = true;
  for (int n : {1, 2}) {
    Network net = build_binary_bump(n, frac(1, 3));
    const std::uint64_t got = count_def(net, 4);
    const std::uint64_t expected = 1 + (std::uint64_t{1} << (2 * n));
    g_audit.check_network(net, "criterion-01");
    if (got == expected) {
      msg << "n=" << n << ": " << got << " as stated. ";
    } else {
      ok = false;
      msg << "n=" << n << ": measured " << got << ", stated closed form gives " << expected;
      if (n == 1) {
        const std::uint64_t oracle = line_census(net).defs[3].value;
        msg << " (the 1-D zero set splits into three intervals, so the true count is 7; "
               "independent breakpoint sweep agrees: "
            << oracle << ")";
      }
      msg << ". ";
    }
  }
  v.pass = ok;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 2: region-counter gadget equals 1 + k*2^n over the full universe
// of clause sets with n <= 3 variables, m <= 4 clauses, every clause with at
// least one positive literal.
// ---------------------------------------------------------------------------

std::vector<Clause> positive_clauses(int n) {
  // Every (pos, neg) disjoint pair with pos nonempty, encoded by two bitmasks.
  std::vector<Clause> out;
  const int full = 1 << n;
  for (int pos = 1; pos < full; ++pos) {
    for (int neg = 0; neg < full; ++neg) {
      if ((pos & neg) != 0) continue;
      Clause c;
      for (int i = 0; i < n; ++i) {
        if (pos & (1 << i)) c.pos.push_back(i + 1);
        if (neg & (1 << i)) c.neg.push_back(i + 1);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::uint64_t count_models(const CnfFormula& cnf) {
  std::uint64_t k = 0;
  std::vector<std::uint8_t> assignment(cnf.num_vars, 0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    for (int i = 0; i < cnf.num_vars; ++i) assignment[i] = (bits >> i) & 1 ? 1 : 0;
    if (cnf.satisfied_by(assignment)) ++k;
  }
  return k;
}

Verdict criterion_counter_sweep() {
  Verdict v;
  std::ostringstream msg;
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    const std::vector<Clause> clauses = positive_clauses(n);
    std::uint64_t total = 0;
    std::uint64_t matched = 0;
    std::vector<std::string> mismatches;
    std::vector<int> pick;

    auto run_formula = [&](const std::vector<int>& indices) {
      CnfFormula cnf;
      cnf.num_vars = n;
      for (int idx : indices) cnf.clauses.push_back(clauses[idx]);
      const std::uint64_t k = count_models(cnf);
      Network net = build_sat_counter(cnf, 3);
      const std::uint64_t got = count_def(net, 4);
      const std::uint64_t expected = 1 + k * (std::uint64_t{1} << n);
      ++total;
      if (g_audit.networks < 40 && hidden_count(net) <= 14) {
        g_audit.check_network(net, "criterion-02");
      }
      if (got == expected) {
        ++matched;
      } else if (mismatches.size() < 2) {
        std::ostringstream ex;
        ex << "n=" << n << " m=" << indices.size() << " k=" << k << ": measured " << got
           << " vs 1+k*2^n=" << expected;
        mismatches.push_back(ex.str());
      }
    };

    // Every clause subset of size 0..4, each visited exactly once when its
    // last element is pushed.
    std::function<void(std::size_t)> walk = [&](std::size_t start) {
      run_formula(pick);
      if (pick.size() == 4) return;
      for (std::size_t i = start; i < clauses.size(); ++i) {
        pick.push_back(static_cast<int>(i));
        walk(i + 1);
        pick.pop_back();
      }
    };
    walk(0);

    msg << "n=" << n << ": " << matched << "/" << total << " clause sets match 1+k*2^n";
    if (matched != total) {
      ok = false;
      msg << " (";
      for (std::size_t i = 0; i < mismatches.size(); ++i) {
        msg << (i ? "; " : "") << mismatches[i];
      }
      msg << "; in one dimension the counter's zero set is two rays, so every true count "
             "is 2+2k, one above the stated form)";
    }
    msg << ". ";
  }
  v.pass = ok;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 3: satisfiability decision via the bump compilation, against a
// brute-force assignment sweep, on random and engineered formulas up to n=8.
// ---------------------------------------------------------------------------

Verdict criterion_sat_decision() {
  Verdict v;
  std::mt19937_64 rng(20260814);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  std::vector<CnfFormula> instances;

  // Random formulas, n = 1..5: each variable appears positive / negated /
  // not at all with equal probability; empty clauses are redrawn.
  for (int round = 0; round < 7; ++round) {
    for (int n = 1; n <= 5; ++n) {
      CnfFormula cnf;
      cnf.num_vars = n;
      const int m = rand_int(1, 2 * n);
      while (cnf.num_clauses() < m) {
        Clause c;
        for (int i = 1; i <= n; ++i) {
          switch (rand_int(0, 2)) {
            case 0: c.pos.push_back(i); break;
            case 1: c.neg.push_back(i); break;
            default: break;
          }
        }
        if (c.size() > 0) cnf.clauses.push_back(std::move(c));
      }
      instances.push_back(std::move(cnf));
    }
  }

  // Planted-satisfiable formulas, n = 6..8: every clause is forced to hold
  // under a hidden assignment (certifying the unsatisfiable side exactly at
  // these sizes costs a full sweep of an eight-dimensional complex).
  for (int round = 0; round < 7; ++round) {
    for (int n = 6; n <= 8; ++n) {
      CnfFormula cnf;
      cnf.num_vars = n;
      std::vector<std::uint8_t> planted(n);
      for (auto& b : planted) b = static_cast<std::uint8_t>(rng() & 1);
      const int m = rand_int(n, 2 * n);
      for (int j = 0; j < m; ++j) {
        Clause c;
        std::set<int> vars;
        while (static_cast<int>(vars.size()) < 3) vars.insert(rand_int(1, n));
        bool holds = false;
        for (int var : vars) {
          const bool positive = rng() & 1;
          (positive ? c.pos : c.neg).push_back(var);
          if (positive == (planted[var - 1] != 0)) holds = true;
        }
        if (!holds) {  // flip the first literal to agree with the plant
          const int var = *vars.begin();
          c.pos.erase(std::remove(c.pos.begin(), c.pos.end(), var), c.pos.end());
          c.neg.erase(std::remove(c.neg.begin(), c.neg.end(), var), c.neg.end());
          (planted[var - 1] ? c.pos : c.neg).push_back(var);
        }
        std::sort(c.pos.begin(), c.pos.end());
        std::sort(c.neg.begin(), c.neg.end());
        cnf.clauses.push_back(std::move(c));
      }
      instances.push_back(std::move(cnf));
    }
  }

  // Engineered unsatisfiable formulas at several dimensions: the full sign
  // cube over the first three variables is unsatisfiable however many spare
  // variables the instance carries.
  for (int n = 3; n <= 5; ++n) {
    CnfFormula cnf;
    cnf.num_vars = n;
    for (int bits = 0; bits < 8; ++bits) {
      Clause c;
      for (int i = 0; i < 3; ++i) {
        if (bits & (1 << i)) c.neg.push_back(i + 1);
        else c.pos.push_back(i + 1);
      }
      cnf.clauses.push_back(std::move(c));
    }
    instances.push_back(std::move(cnf));
  }
  {
    CnfFormula cnf;  // (x1) and (not x1)
    cnf.num_vars = 1;
    cnf.clauses.push_back(Clause{{1}, {}});
    cnf.clauses.push_back(Clause{{}, {1}});
    instances.push_back(std::move(cnf));
  }

  std::uint64_t sat_count = 0;
  std::uint64_t unsat_count = 0;
  std::uint64_t audited = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const CnfFormula& cnf = instances[i];
    const bool expected = cnf.brute_force_satisfiable();
    Network net = build_sat_bump(cnf);
    const bool got = k_region_decide(net, 1, 4);
    if (got != expected) {
      v.pass = false;
      std::ostringstream msg;
      msg << "instance " << i << " (n=" << cnf.num_vars << ", m=" << cnf.num_clauses()
          << "): decision " << (got ? "sat" : "unsat") << " but assignment sweep says "
          << (expected ? "sat" : "unsat");
      v.detail = msg.str();
      return v;
    }
    (expected ? sat_count : unsat_count) += 1;
    if (cnf.num_vars <= 2 && audited < 6) {
      g_audit.check_network(net, "criterion-03");
      ++audited;
    }
  }
  std::ostringstream msg;
  msg << instances.size() << " formulas (n up to 8), all decisions match the assignment sweep ("
      << sat_count << " satisfiable, " << unsat_count << " unsatisfiable)";
  v.pass = true;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 4: amplification multiplies the definition-6 count: m^k.
// ---------------------------------------------------------------------------

Verdict criterion_amplification() {
  Verdict v;
  Network absnet;
  absnet.input_dim = 1;
  absnet.layers.push_back({{{Rational(1)}, {Rational(-1)}}, {Rational(0), Rational(0)}});
  absnet.layers.push_back({{{Rational(1), Rational(1)}}, {Rational(0)}});

  Network plateau;  // relu(x) - relu(x-1): two breakpoints, three functions
  plateau.input_dim = 1;
  plateau.layers.push_back({{{Rational(1)}, {Rational(1)}}, {Rational(0), Rational(-1)}});
  plateau.layers.push_back({{{Rational(1), Rational(-1)}}, {Rational(0)}});

  std::ostringstream msg;
  for (const auto& base : {std::make_pair(&absnet, "two-piece"),
                           std::make_pair(&plateau, "two-breakpoint")}) {
    const std::uint64_t m = count_def(*base.first, 6);
    for (int k = 1; k <= 3; ++k) {
      Network big = amplify(*base.first, k);
      const std::uint64_t got = count_def(big, 6);
      std::uint64_t expected = 1;
      for (int i = 0; i < k; ++i) expected *= m;
      g_audit.check_network(big, "criterion-04");
      if (got != expected) {
        v.pass = false;
        std::ostringstream err;
        err << base.second << " base (m=" << m << "), k=" << k << ": measured " << got
            << ", expected " << expected;
        v.detail = err.str();
        return v;
      }
    }
    msg << base.second << " base: m=" << m << ", counts m^k for k=1..3. ";
  }
  v.pass = true;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 5: arrangement networks have R1 = R2 = R4 = R6 = cell count;
// generic counts match the binomial formula, central counts match a sign
// enumeration.
// ---------------------------------------------------------------------------

bool arrangement_is_generic(const std::vector<AffineFunction>& hs, int n) {
  const int m = static_cast<int>(hs.size());
  // Every subset of size <= n must have independent normals; every subset of
  // size n+1 must have an inconsistent equation system.
  for (int bits = 1; bits < (1 << m); ++bits) {
    const int size = __builtin_popcount(static_cast<unsigned>(bits));
    if (size > n + 1) continue;
    std::vector<std::vector<Rational>> normals;
    std::vector<std::vector<Rational>> extended;
    for (int i = 0; i < m; ++i) {
      if (!(bits & (1 << i))) continue;
      normals.push_back(hs[i].w);
      std::vector<Rational> row = hs[i].w;
      row.push_back(-hs[i].b);  // hyperplane w.x + b = 0 as [w | -b]
      extended.push_back(std::move(row));
    }
    if (size <= n) {
      if (matrix_rank(normals) != size) return false;
    } else {
      // n+1 hyperplanes may not share a point: ranks must differ.
      if (matrix_rank(normals) == matrix_rank(extended)) return false;
    }
  }
  return true;
}

Verdict criterion_arrangements() {
  Verdict v;
  std::mt19937_64 rng(7071);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  int generic_done = 0;
  int central_done = 0;
  std::uint64_t total = 0;
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 11; ++rep) {
      const bool central = rep % 2 == 1;

      // Draw hyperplane sets until one fits the instance kind (generic
      // position is rejected-sampled, so a bounded number of redraws).
      std::vector<AffineFunction> hs;
      int m = 0;
      for (int redraw = 0; redraw < 200; ++redraw) {
        m = rand_int(central ? 2 : 1, 6);
        hs.clear();
        for (int attempt = 0; attempt < 1000 && static_cast<int>(hs.size()) < m; ++attempt) {
          std::vector<Rational> w(n);
          bool nonzero = false;
          for (auto& c : w) {
            c = Rational(rand_int(-4, 4));
            if (c != 0) nonzero = true;
          }
          if (!nonzero) continue;
          AffineFunction f{w, central ? Rational(0) : Rational(rand_int(-4, 4))};
          bool dup = false;  // reject rescaled copies of an existing hyperplane
          for (const AffineFunction& g : hs) {
            std::vector<Rational> r1 = f.w;
            r1.push_back(f.b);
            std::vector<Rational> r2 = g.w;
            r2.push_back(g.b);
            if (matrix_rank({r1, r2}) < 2) dup = true;
          }
          if (!dup) hs.push_back(std::move(f));
        }
        if (static_cast<int>(hs.size()) < m) continue;
        if (central || arrangement_is_generic(hs, n)) break;
        hs.clear();
      }
      if (static_cast<int>(hs.size()) < m || hs.empty()) continue;

      // Orientation point off every hyperplane.
      Point orient;
      for (int attempt = 0;; ++attempt) {
        orient.clear();
        for (int i = 0; i < n; ++i) orient.push_back(Rational(rand_int(-40, 40)) / 7);
        bool off = true;
        for (const AffineFunction& f : hs) {
          if (f.eval(orient) == 0) off = false;
        }
        if (off) break;
        if (attempt > 200) {
          v.pass = false;
          v.detail = "could not find an orientation point";
          return v;
        }
      }

      Network net = build_arrangement_network(hs, orient);
      CensusReport census = count_regions(net, {1, 2, 4, 6});
      const std::uint64_t r1 = census.defs[0].value;
      const std::uint64_t r2 = census.defs[1].value;
      const std::uint64_t r4 = census.defs[3].value;
      const std::uint64_t r6 = census.defs[5].value;
      g_audit.check_network(net, "criterion-05");

      // Independent cell count through the arrangement-walk route.
      EffectiveArrangement arr;
      arr.dim = n;
      arr.hyperplanes = hs;
      LpContext ctx;
      const std::uint64_t cells = count_arrangement_cells(arr, &ctx);

      std::uint64_t reference = cells;
      std::string reference_name = "arrangement walk";
      if (!central) {
        reference = generic_cells(m, n);
        reference_name = "binomial formula";
      } else {
        // Brute-force sign enumeration: a cell per strictly-feasible sign
        // vector of the homogeneous system.
        std::uint64_t feasible = 0;
        for (int bits = 0; bits < (1 << m); ++bits) {
          ConstraintSystem sys;
          sys.dim = n;
          std::vector<int> strict_rows;
          for (int i = 0; i < m; ++i) {
            AffineFunction f = hs[i];
            if (!(bits & (1 << i))) f = -f;
            sys.rows.push_back(ge_zero(f));
            strict_rows.push_back(i);
          }
          LpContext sctx;
          if (strict_point(sys, strict_rows, &sctx).has_value()) ++feasible;
        }
        reference = feasible;
        reference_name = "sign enumeration";
      }

      ++total;
      (central ? central_done : generic_done) += 1;
      if (!(r1 == r2 && r2 == r4 && r4 == r6 && r6 == cells && cells == reference)) {
        v.pass = false;
        std::ostringstream err;
        err << (central ? "central" : "generic") << " m=" << m << " n=" << n << ": censuses "
            << r1 << "/" << r2 << "/" << r4 << "/" << r6 << ", walk " << cells << ", "
            << reference_name << " " << reference;
        v.detail = err.str();
        return v;
      }
    }
  }
  std::ostringstream msg;
  msg << total << " arrangements (" << generic_done << " generic vs binomial formula, "
      << central_done << " central vs sign enumeration): R1=R2=R4=R6=cells everywhere";
  v.pass = total >= 20;
  v.detail = msg.str();
  if (total < 20) v.detail += " -- fewer than 20 instances generated";
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 6: count hierarchy R6 <= R4 <= R2 <= R1 on random networks, with
// the 1-D breakpoint oracle cross-checking every one-input instance.
// ---------------------------------------------------------------------------

Verdict criterion_hierarchy() {
  Verdict v;
  std::mt19937_64 rng(424242);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  int one_dim_checked = 0;
  const int kNets = 102;
  for (int t = 0; t < kNets; ++t) {
    const int n = 1 + t % 3;
    const int depth = rand_int(1, 3);
    std::vector<int> widths(depth);
    int budget = 10;
    for (int l = 0; l < depth; ++l) {
      widths[l] = rand_int(1, std::min(4, budget - (depth - 1 - l)));
      budget -= widths[l];
    }
    Network net;
    net.input_dim = n;
    int fan_in = n;
    for (int l = 0; l < depth; ++l) {
      Layer layer;
      for (int j = 0; j < widths[l]; ++j) {
        std::vector<Rational> w(fan_in);
        for (auto& c : w) c = Rational(rand_int(-3, 3));
        layer.weights.push_back(std::move(w));
        layer.biases.push_back(Rational(rand_int(-3, 3)));
      }
      net.layers.push_back(std::move(layer));
      fan_in = widths[l];
    }
    Layer out;
    std::vector<Rational> w(fan_in);
    for (auto& c : w) c = Rational(rand_int(-3, 3));
    out.weights.push_back(std::move(w));
    out.biases.push_back(Rational(rand_int(-3, 3)));
    net.layers.push_back(std::move(out));

    CensusReport census = count_regions(net, {1, 2, 4, 6});
    const std::uint64_t r1 = census.defs[0].value;
    const std::uint64_t r2 = census.defs[1].value;
    const std::uint64_t r4 = census.defs[3].value;
    const std::uint64_t r6 = census.defs[5].value;
    if (t % 11 == 0) g_audit.check_network(net, "criterion-06");
    if (!(r6 <= r4 && r4 <= r2 && r2 <= r1)) {
      v.pass = false;
      std::ostringstream err;
      err << "net " << t << " (n=" << n << "): counts " << r6 << "/" << r4 << "/" << r2 << "/"
          << r1 << " violate R6 <= R4 <= R2 <= R1";
      v.detail = err.str();
      return v;
    }
    if (n == 1) {
      CensusReport oracle = line_census(net);
      ++one_dim_checked;
      if (oracle.defs[0].value != r1 || oracle.defs[1].value != r2 ||
          oracle.defs[3].value != r4 || oracle.defs[5].value != r6) {
        v.pass = false;
        std::ostringstream err;
        err << "net " << t << ": breakpoint oracle " << oracle.defs[0].value << "/"
            << oracle.defs[1].value << "/" << oracle.defs[3].value << "/"
            << oracle.defs[5].value << " vs engine " << r1 << "/" << r2 << "/" << r4 << "/"
            << r6;
        v.detail = err.str();
        return v;
      }
    }
  }
  std::ostringstream msg;
  msg << kNets << " random networks respect R6 <= R4 <= R2 <= R1; " << one_dim_checked
      << " one-input networks also match the breakpoint oracle exactly";
  v.pass = true;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 7: the literal coefficient sweep.  The sweep's search bound is
// U = 2^(36 d^2 n_max^2 <A_max>) >= 2^144 even for one-neuron networks with
// entries in {-1, 0, 1}, so no desk-scale cap admits it; the criterion is
// run as stated and fails honestly.  The sweep loop itself is cross-checked
// through the bound-injection hook at a bound that provably covers every
// realizable coefficient of these networks.
// ---------------------------------------------------------------------------

Verdict criterion_literal_sweep() {
  Verdict v;
  std::vector<Network> nets;
  auto one_neuron = [](long w, long b, long vout, long c) {
    Network net;
    net.input_dim = 1;
    net.layers.push_back({{{Rational(w)}}, {Rational(b)}});
    net.layers.push_back({{{Rational(vout)}}, {Rational(c)}});
    return net;
  };
  auto two_neuron = [](long w1, long b1, long w2, long b2, long v1, long v2, long c) {
    Network net;
    net.input_dim = 1;
    net.layers.push_back({{{Rational(w1)}, {Rational(w2)}}, {Rational(b1), Rational(b2)}});
    net.layers.push_back({{{Rational(v1), Rational(v2)}}, {Rational(c)}});
    return net;
  };
  nets.push_back(one_neuron(1, 0, 1, 0));
  nets.push_back(one_neuron(1, 1, 1, 0));
  nets.push_back(one_neuron(-1, 0, 1, 1));
  nets.push_back(one_neuron(1, -1, -1, 0));
  nets.push_back(one_neuron(-1, 1, -1, -1));
  nets.push_back(one_neuron(1, 0, 0, 1));
  nets.push_back(two_neuron(1, 0, -1, 0, 1, 1, 0));    // |x|
  nets.push_back(two_neuron(1, 0, -1, 0, 1, -1, 0));   // x
  nets.push_back(two_neuron(1, 0, 1, -1, 1, -1, 0));   // plateau
  nets.push_back(two_neuron(1, 0, 1, -1, 1, 1, -1));
  nets.push_back(two_neuron(1, 1, -1, 1, 1, 1, 0));
  nets.push_back(two_neuron(-1, -1, 1, 0, -1, 1, 1));

  unsigned long long min_exponent = ~0ULL;
  bool all_capped = true;
  int cross_checked = 0;
  const Integer cap = Integer(1) << 40;  // far beyond any desk-scale sweep already
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const Network& net = nets[i];
    const unsigned long long exponent = coefficient_bound(net);
    min_exponent = std::min(min_exponent, exponent);
    bool threw = false;
    try {
      (void)exhaustive_search(net, cap);
    } catch (const ResourceLimitError&) {
      threw = true;
    }
    if (!threw) all_capped = false;

    // Entries in {-1,0,1} on a single hidden layer realize only integer
    // coefficients of magnitude <= 2, so a sweep bound of 3 covers them all.
    const std::uint64_t swept = detail::exhaustive_search_with_bound(net, Integer(3));
    const std::uint64_t dedup = count_def(net, 6);
    g_audit.check_network(net, "criterion-07");
    if (swept == dedup) ++cross_checked;
  }

  std::ostringstream msg;
  msg << "the sweep bound U = 2^" << min_exponent << " at minimum; every cap up to 2^40 "
      << "rejects it, so the search as stated cannot run at desk scale "
      << "(bound-injected sweep at 3 matches the deduplicating count on " << cross_checked << "/"
      << nets.size() << " networks, so the loop itself is exercised)";
  v.pass = false;  // honest failure: the stated cap condition is unsatisfiable
  if (!all_capped) msg << " -- UNEXPECTED: some sweep ran to completion under the cap";
  if (cross_checked != static_cast<int>(nets.size())) msg << " -- sweep/dedup mismatch";
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 8: shallow affinity decision against a fit-and-verify oracle.
// ---------------------------------------------------------------------------

bool oracle_affine_shallow(const Network& net) {
  const int n = net.input_dim;
  // Fit an affine map on 0, e_1, ..., e_n.
  Point zero(n, Rational(0));
  const Rational f0 = evaluate(net, zero);
  AffineFunction fitted;
  fitted.b = f0;
  fitted.w.resize(n);
  for (int i = 0; i < n; ++i) {
    Point e(n, Rational(0));
    e[i] = Rational(1);
    fitted.w[i] = evaluate(net, e) - f0;
  }
  // Verify on every full-dimensional sign cell of the hidden layer.
  const int h = net.width(0);
  LpContext ctx;
  for (int bits = 0; bits < (1 << h); ++bits) {
    Pattern a(h);
    for (int j = 0; j < h; ++j) a[j] = (bits >> j) & 1 ? 1 : 0;
    if (region_status(net, a, &ctx) != n) continue;
    if (affine_map_of_pattern(net, a) != fitted) return false;
  }
  return true;
}

Verdict criterion_shallow_affinity() {
  Verdict v;
  std::mt19937_64 rng(1337);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  int affine_seen = 0;
  int tested = 0;
  auto check = [&](const Network& net, const char* what) -> bool {
    const bool fast = is_affine_shallow(net);
    const bool slow = oracle_affine_shallow(net);
    ++tested;
    if (fast == slow) {
      if (fast) ++affine_seen;
      return true;
    }
    std::ostringstream err;
    err << what << " (instance " << tested << "): is_affine_shallow=" << fast
        << " but fit-and-verify says " << slow;
    v.detail = err.str();
    return false;
  };

  // Random shallow networks.
  for (int t = 0; t < 70; ++t) {
    const int n = 1 + t % 3;
    const int h = rand_int(1, 5);
    Network net;
    net.input_dim = n;
    Layer hidden;
    for (int j = 0; j < h; ++j) {
      std::vector<Rational> w(n);
      for (auto& c : w) c = Rational(rand_int(-2, 2));
      hidden.weights.push_back(std::move(w));
      hidden.biases.push_back(Rational(rand_int(-2, 2)));
    }
    net.layers.push_back(std::move(hidden));
    Layer out;
    std::vector<Rational> w(h);
    for (auto& c : w) c = Rational(rand_int(-2, 2));
    out.weights.push_back(std::move(w));
    out.biases.push_back(Rational(rand_int(-2, 2)));
    net.layers.push_back(std::move(out));
    if (!check(net, "random shallow net")) {
      v.pass = false;
      return v;
    }
    if (t % 9 == 0) g_audit.check_network(net, "criterion-08");
  }

  // Engineered cancellations: c*relu(z) - c*relu(-z) plus scaled classmates
  // is exactly affine; flipping one output sign breaks it on one side.
  for (int t = 0; t < 36; ++t) {
    const int n = 1 + t % 3;
    Network net;
    net.input_dim = n;
    Layer hidden;
    Layer out;
    out.weights.emplace_back();
    const int groups = 1 + t % 2;
    for (int gidx = 0; gidx < groups; ++gidx) {
      std::vector<Rational> w(n);
      bool nonzero = false;
      while (!nonzero) {
        for (auto& c : w) {
          c = Rational(rand_int(-2, 2));
          if (c != 0) nonzero = true;
        }
      }
      const Rational b = Rational(rand_int(-2, 2));
      const Rational cw = Rational(rand_int(1, 2));
      const long scale = rand_int(1, 2);
      // Member pair z and -z with opposite output weights: contributes cw*z.
      hidden.weights.push_back(w);
      hidden.biases.push_back(b);
      out.weights[0].push_back(cw);
      std::vector<Rational> neg(n);
      for (int i = 0; i < n; ++i) neg[i] = -w[i] * scale;
      hidden.weights.push_back(std::move(neg));
      hidden.biases.push_back(-b * scale);
      const bool sabotage = t % 3 == 2 && gidx == 0;
      // Cancellation needs output weights scaling like cw/scale with the
      // opposite sign; sabotage flips the sign and must break affinity.
      out.weights[0].push_back((sabotage ? cw : -cw) / scale);
    }
    net.layers.push_back(std::move(hidden));
    out.biases.push_back(Rational(rand_int(-2, 2)));
    net.layers.push_back(std::move(out));
    if (!check(net, "engineered cancellation")) {
      v.pass = false;
      return v;
    }
    if (t % 7 == 0) g_audit.check_network(net, "criterion-08");
  }

  // Degenerate corner: every neuron constant.
  {
    Network net;
    net.input_dim = 2;
    net.layers.push_back(
        {{{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}, {Rational(1), Rational(-1)}});
    net.layers.push_back({{{Rational(2), Rational(3)}}, {Rational(1)}});
    if (!check(net, "all-constant hidden layer")) {
      v.pass = false;
      return v;
    }
  }

  std::ostringstream msg;
  msg << tested << " shallow networks agree with the fit-and-verify oracle (" << affine_seen
      << " affine, " << tested - affine_seen << " not)";
  v.pass = true;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 9: the equivalence decider.
// ---------------------------------------------------------------------------

Verdict criterion_equivalence() {
  Verdict v;
  // relu(x) - relu(-x) is the identity map.
  Network pair;
  pair.input_dim = 1;
  pair.layers.push_back({{{Rational(1)}, {Rational(-1)}}, {Rational(0), Rational(0)}});
  pair.layers.push_back({{{Rational(1), Rational(-1)}}, {Rational(0)}});
  Network identity = affine_network(AffineFunction({Rational(1)}, Rational(0)));
  if (!networks_equivalent(pair, identity)) {
    v.detail = "relu pair was not recognized as the identity map";
    return v;
  }

  // A satisfiability bump is equivalent to its depth-padded variants.
  CnfFormula cnf;
  cnf.num_vars = 2;
  cnf.clauses.push_back(Clause{{}, {1}});
  cnf.clauses.push_back(Clause{{1, 2}, {}});
  Network nphi = build_sat_bump(cnf);
  for (int extra = 1; extra <= 2; ++extra) {
    Network padded = pad_depth(nphi, nphi.depth() + extra);
    if (!networks_equivalent(nphi, padded)) {
      v.detail = "depth padding changed the computed function (extra=" +
                 std::to_string(extra) + ")";
      return v;
    }
  }

  // |x| is not the zero function, and the decider must produce a witness.
  Network absnet;
  absnet.input_dim = 1;
  absnet.layers.push_back({{{Rational(1)}, {Rational(-1)}}, {Rational(0), Rational(0)}});
  absnet.layers.push_back({{{Rational(1), Rational(1)}}, {Rational(0)}});
  Network zero = affine_network(AffineFunction({Rational(0)}, Rational(0)));
  EquivalenceResult res = networks_equivalent_full(absnet, zero);
  if (res.equivalent || !res.differing.has_value() || res.differing->is_zero()) {
    v.detail = "|x| vs zero must be refuted with a nonzero witness function";
    return v;
  }
  g_audit.check_function(*res.differing, coefficient_bound(absnet), "criterion-09");

  v.pass = true;
  v.detail =
      "relu-pair == identity, bump == its depth-padded variants, |x| != 0 with a nonzero witness";
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 10: worked example networks against a frozen brute-force
// derivation (full pattern sweep, no census-engine code).
// ---------------------------------------------------------------------------

struct BruteCensus {
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  std::uint64_t r4 = 0;
  std::uint64_t r6 = 0;
};

BruteCensus brute_census(const Network& net) {
  BruteCensus out;
  const int n = net.input_dim;
  const int s = hidden_count(net);
  LpContext ctx;
  std::vector<Pattern> proper;
  std::vector<AffineFunction> funcs;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits) {
    Pattern a(s);
    for (int j = 0; j < s; ++j) a[j] = (bits >> j) & 1 ? 1 : 0;
    const int dim = region_status(net, a, &ctx);
    if (dim >= 0) ++out.r1;
    if (dim == n) {
      ++out.r2;
      proper.push_back(std::move(a));
      funcs.push_back(affine_map_of_pattern(net, proper.back()));
    }
  }
  std::set<AffineFunction> distinct(funcs.begin(), funcs.end());
  out.r6 = distinct.size();

  // Merge proper regions that realize one function across a shared facet.
  std::vector<std::size_t> parent(proper.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < proper.size(); ++i) {
    for (std::size_t j = i + 1; j < proper.size(); ++j) {
      if (funcs[i] != funcs[j]) continue;
      if (find(i) == find(j)) continue;
      if (closure_intersection_dim(net, proper[i], proper[j], &ctx) == n - 1) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < proper.size(); ++i) roots.insert(find(i));
  out.r4 = roots.size();
  return out;
}

Verdict criterion_worked_examples() {
  Verdict v;
  struct Fixture {
    const char* name;
    Network net;
    BruteCensus expected;
  };
  // Frozen values: definition-4/6 entries hand-derived from the min/max
  // formulas before the engine existed; definition-1/2 entries produced by
  // the pattern-sweep route below on first run and pinned since.
  std::vector<Fixture> fixtures;
  fixtures.push_back({"three-piece min/max example", build_example_a(), {31, 18, 5, 4}});
  fixtures.push_back({"tent composition example", build_example_b(), {26, 20, 9, 7}});

  std::ostringstream msg;
  for (const Fixture& fx : fixtures) {
    CensusReport census = count_regions(fx.net, {1, 2, 4, 6});
    const std::uint64_t e1 = census.defs[0].value;
    const std::uint64_t e2 = census.defs[1].value;
    const std::uint64_t e4 = census.defs[3].value;
    const std::uint64_t e6 = census.defs[5].value;
    BruteCensus brute = brute_census(fx.net);
    g_audit.check_network(fx.net, "criterion-10");
    const bool engine_ok = e1 == fx.expected.r1 && e2 == fx.expected.r2 &&
                           e4 == fx.expected.r4 && e6 == fx.expected.r6;
    const bool brute_ok = brute.r1 == fx.expected.r1 && brute.r2 == fx.expected.r2 &&
                          brute.r4 == fx.expected.r4 && brute.r6 == fx.expected.r6;
    if (!engine_ok || !brute_ok) {
      std::ostringstream err;
      err << fx.name << ": fixture " << fx.expected.r1 << "/" << fx.expected.r2 << "/"
          << fx.expected.r4 << "/" << fx.expected.r6 << ", engine " << e1 << "/" << e2 << "/"
          << e4 << "/" << e6 << ", sweep " << brute.r1 << "/" << brute.r2 << "/" << brute.r4
          << "/" << brute.r6;
      v.detail = err.str();
      return v;
    }
    msg << fx.name << ": engine and full pattern sweep both give " << fx.expected.r1 << "/"
        << fx.expected.r2 << "/" << fx.expected.r4 << "/" << fx.expected.r6
        << " (R1/R2/R4/R6). ";
  }
  v.pass = true;
  v.detail = msg.str();
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 11: every audited coefficient within the encoding bound.
// ---------------------------------------------------------------------------

Verdict criterion_coefficient_bound() {
  Verdict v;
  std::ostringstream msg;
  msg << g_audit.checked << " coefficients from " << g_audit.networks
      << " networks audited inline across criteria 1-10; " << g_audit.violations
      << " exceeded the 36 d^2 n_max^2 <A_max> bound";
  if (!g_audit.first_violation.empty()) msg << " (first: " << g_audit.first_violation << ")";
  v.pass = g_audit.violations == 0 && g_audit.checked > 1000;
  v.detail = msg.str();
  return v;
}

}  // namespace

int main() {
  std::cout << "acceptance gate: exact region counting, two independent routes per check\n";
  int failed = 0;
  failed += run_criterion(1, "corner-bump closed form", 20, criterion_bump_closed_form);
  failed += run_criterion(2, "counter gadget closed form (full clause-set sweep)", 300,
                          criterion_counter_sweep);
  failed += run_criterion(3, "satisfiability decision gadget", 300, criterion_sat_decision);
  failed += run_criterion(4, "amplification power law", 60, criterion_amplification);
  failed += run_criterion(5, "arrangement network equivalence", 120, criterion_arrangements);
  failed += run_criterion(6, "count hierarchy + 1-D oracle", 600, criterion_hierarchy);
  failed += run_criterion(7, "literal coefficient sweep", 300, criterion_literal_sweep);
  failed += run_criterion(8, "shallow affinity decision", 60, criterion_shallow_affinity);
  failed += run_criterion(9, "equivalence decider", 30, criterion_equivalence);
  failed += run_criterion(10, "worked example censuses", 60, criterion_worked_examples);
  failed += run_criterion(11, "coefficient encoding bound", 0, criterion_coefficient_bound);
  if (failed == 0) {
    std::cout << "acceptance gate: all 11 criteria pass\n";
  } else {
    std::cout << "acceptance gate: " << failed << " of 11 criteria fail (see lines above; "
              << "the failing checks compare against closed forms whose stated range "
              << "includes cases they provably do not cover, and a sweep whose bound "
              << "no desk-scale cap admits)\n";
  }
  return failed == 0 ? 0 : 1;
}
