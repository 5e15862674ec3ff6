#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

using Json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string cli_binary() {
  const char* bin = std::getenv("RELUREGIONS_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "RELUREGIONS_BIN must point at the CLI binary");
  return bin;
}

std::string data_file(const std::string& name) {
  const char* dir = std::getenv("RELUREGIONS_DATA");
  REQUIRE_MESSAGE(dir != nullptr, "RELUREGIONS_DATA must point at tests/data");
  return std::string(dir) + "/" + name;
}

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path p = std::filesystem::temp_directory_path() /
                              ("reluregions_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
  }();
  return dir;
}

std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = "'" + cli_binary() + "' " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  RunResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.out.append(buffer, got);
  }
  int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

Json run_json(const std::string& args, int expect_code = 0) {
  RunResult r = run_cli(args);
  CAPTURE(args);
  CAPTURE(r.out);
  REQUIRE(r.code == expect_code);
  return Json::parse(r.out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("usage errors and help") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("count --help").code == 0);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("count").code == 2);                       // missing network path
  CHECK(run_cli("gen bump").code == 2);                    // missing -o
  CHECK(run_cli("count /nonexistent/net.json").code == 3); // unreadable input
  CHECK(run_cli("gen frobnicate -o " + scratch("x.json")).code == 3);
}

TEST_CASE("count report shape and values") {
  Json d = run_json("count " + data_file("abs.json") + " --defs 1,2,4,6");
  CHECK(d["command"] == "count");
  CHECK(d["version"].is_string());
  CHECK(d["inputs"][0]["label"] == "network");
  CHECK(d["inputs"][0]["fnv1a64"].is_string());
  CHECK(d["census"]["input_dim"] == 1);
  const Json& defs = d["census"]["definitions"];
  REQUIRE(defs.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(defs[i]["definition"] == i + 1);
  CHECK(defs[0]["count"] == 3);
  CHECK(defs[1]["count"] == 2);
  CHECK(defs[3]["count"] == 2);
  CHECK(defs[5]["count"] == 2);
  CHECK(defs[4]["computed"] == false);
  CHECK(defs[4]["note"] == "not computed: open problem");
  for (const char* key : {"patterns_explored", "regions_found", "lp_solves",
                          "adjacency_tests", "adjacency_skipped"}) {
    CHECK(d["work"][key].is_number());
  }
}

TEST_CASE("count resolves definition 3 through the shallow route") {
  Json d = run_json("count " + data_file("abs.json") + " --defs 3");
  const Json& def3 = d["census"]["definitions"][2];
  CHECK(def3["computed"] == true);
  CHECK(def3["count"] == 2);
  CHECK(std::string(def3["note"]).find("definition 4") != std::string::npos);

  // Definition 3 on a deeper network stays honest: reported as not computed.
  std::string deep = scratch("example_a.json");
  REQUIRE(run_cli("gen example-a -o " + deep).code == 0);
  Json d2 = run_json("count " + deep + " --defs 3");
  const Json& deep3 = d2["census"]["definitions"][2];
  CHECK(deep3["computed"] == false);
  CHECK(std::string(deep3["note"]).find("not computed") != std::string::npos);
}

TEST_CASE("count --regions lists the proper regions") {
  Json d = run_json("count " + data_file("abs.json") + " --defs 1,2 --regions");
  const Json& regions = d["regions"];
  REQUIRE(regions.is_array());
  int proper = 0;
  for (const Json& r : regions) {
    CHECK(r["pattern"].is_string());
    CHECK(r["dim"].is_number());
    CHECK(r["function"]["w"].is_array());
    if (r["dim"] == 1) ++proper;
  }
  CHECK(regions.size() == 3);  // activation regions, including the boundary sliver
  CHECK(proper == 2);
}

TEST_CASE("decide reports threshold comparisons through the exit code") {
  RunResult yes = run_cli("decide " + data_file("abs.json") + " --k 1 --def 4");
  CHECK(yes.code == 0);
  Json dyes = Json::parse(yes.out);
  CHECK(dyes["decision"]["more_than_k"] == true);
  CHECK(dyes["decision"]["certified_at_least"] >= 2);

  RunResult no = run_cli("decide " + data_file("abs.json") + " --k 2 --def 4");
  CHECK(no.code == 1);
  Json dno = Json::parse(no.out);
  CHECK(dno["decision"]["more_than_k"] == false);
  CHECK(dno["decision"]["exact"] == true);
  CHECK(dno["decision"]["exact_count"] == 2);
}

TEST_CASE("equiv compares networks and signals through the exit code") {
  std::string well = scratch("well1.json");
  REQUIRE(run_cli("gen well --n 1 -o " + well).code == 0);

  RunResult same = run_cli("equiv " + well + " " + well);
  CHECK(same.code == 0);
  Json dsame = Json::parse(same.out);
  CHECK(dsame["equivalence"]["equivalent"] == true);
  CHECK(dsame["equivalence"]["differing_function"].is_null());

  RunResult diff = run_cli("equiv " + data_file("abs.json") + " " + well);
  CHECK(diff.code == 1);
  Json ddiff = Json::parse(diff.out);
  CHECK(ddiff["equivalence"]["equivalent"] == false);
  CHECK(!ddiff["equivalence"]["differing_function"].is_null());
}

TEST_CASE("shallow analyzes one-hidden-layer networks only") {
  Json d = run_json("shallow " + data_file("abs.json"));
  CHECK(d["shallow"]["affine"] == false);
  REQUIRE(d["shallow"]["classes"].size() == 1);
  CHECK(d["shallow"]["classes"][0]["members"].size() == 2);
  const Json& defs = d["census"]["definitions"];
  CHECK(defs[2]["count"] == 2);  // definition 3 is computed on the shallow path
  CHECK(defs[3]["count"] == 2);

  std::string deep = scratch("example_a.json");
  REQUIRE(run_cli("gen example-a -o " + deep).code == 0);
  RunResult r = run_cli("shallow " + deep, /*merge_stderr=*/true);
  CHECK(r.code == 3);
  CHECK(r.out.find("count") != std::string::npos);  // points at the general command
}

TEST_CASE("oracle line and sample modes") {
  std::string bump = scratch("bump1.json");
  REQUIRE(run_cli("gen bump --n 1 --eps 1/3 -o " + bump).code == 0);
  Json line = run_json("oracle line " + bump);
  CHECK(line["line"]["soundness"] == "exact");
  CHECK(line["line"]["breakpoints"].size() == 6);
  CHECK(line["line"]["pieces"].size() == 7);
  CHECK(line["census"]["definitions"][0]["count"] == 9);
  CHECK(line["census"]["definitions"][2]["computed"] == true);
  CHECK(line["census"]["definitions"][4]["computed"] == true);
  CHECK(line["census"]["definitions"][5]["count"] == 5);

  Json sample = run_json("oracle sample " + data_file("abs.json") + " --trials 50 --seed 7");
  CHECK(sample["sample"]["soundness"] == "lower-bound");
  CHECK(sample["sample"]["lower_bound_def1"] == 2);
  CHECK(sample["sample"]["lower_bound_def6"] == 2);
  CHECK(sample["sample"]["interior_samples"] <= 50);

  // The line oracle requires one input.
  std::string wide = scratch("bump2.json");
  REQUIRE(run_cli("gen bump --n 2 --eps 1/3 -o " + wide).code == 0);
  CHECK(run_cli("oracle line " + wide).code == 3);
}

TEST_CASE("gen predictions match the measured counts") {
  struct Case {
    std::string name;
    std::string gen_args;
  };
  const Case cases[] = {
      {"bump2", "gen bump --n 2 --eps 1/3"},
      {"counter", "gen sat-counter --cnf " + data_file("phi_c2.cnf") + " --layers 3"},
      {"ladder", "gen sat-ladder --cnf " + data_file("psi4.cnf") + " --k 3 --layers 2"},
      {"arr_generic", "gen arrangement --n 2 --hyperplanes 4 --seed 5"},
      {"arr_central", "gen arrangement --n 2 --hyperplanes 4 --central --seed 5"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    std::string path = scratch(c.name + ".json");
    Json gen = run_json(c.gen_args + " -o " + path);
    REQUIRE(!gen["prediction"].is_null());
    const int definition = gen["prediction"]["definition"];
    const std::string predicted = gen["prediction"]["count"];
    Json counted =
        run_json("count " + path + " --defs " + std::to_string(definition));
    const Json& entry = counted["census"]["definitions"][definition - 1];
    CHECK(entry["computed"] == true);
    CHECK(std::to_string(static_cast<long long>(entry["count"])) == predicted);
  }
}

TEST_CASE("legacy kind aliases generate identical networks") {
  struct Alias {
    std::string canonical;
    std::string alias;
    std::string flags;
  };
  const Alias aliases[] = {
      {"well", "t", "--n 2"},
      {"bump", "t-eps", "--n 1 --eps 1/4"},
      {"sat-bump", "nphi", "--cnf " + data_file("phi_c2.cnf")},
      {"sat-ladder", "nphi-kl", "--cnf " + data_file("psi4.cnf") + " --k 2 --layers 2"},
      {"sat-counter", "nphi-star", "--cnf " + data_file("phi_c2.cnf") + " --layers 3"},
      {"example-a", "zanotti", ""},
      {"example-b", "fig2", ""},
  };
  for (const Alias& a : aliases) {
    CAPTURE(a.canonical);
    std::string canon_path = scratch("canon_" + a.canonical + ".json");
    std::string alias_path = scratch("alias_" + a.canonical + ".json");
    REQUIRE(run_cli("gen " + a.canonical + " " + a.flags + " -o " + canon_path).code == 0);
    REQUIRE(run_cli("gen " + a.alias + " " + a.flags + " -o " + alias_path).code == 0);
    CHECK(read_file(canon_path) == read_file(alias_path));
  }
}

TEST_CASE("reports are byte-stable across runs and worker counts") {
  std::string bump = scratch("stability_bump.json");
  REQUIRE(run_cli("gen bump --n 2 --eps 1/3 -o " + bump).code == 0);

  std::string base = "count " + bump + " --defs 1,2,4,6";
  RunResult first = run_cli(base);
  RunResult second = run_cli(base);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);

  RunResult solo = run_cli(base + " --workers 1");
  RunResult quad = run_cli(base + " --workers 4");
  REQUIRE(solo.code == 0);
  REQUIRE(quad.code == 0);
  Json dsolo = Json::parse(solo.out);
  Json dquad = Json::parse(quad.out);
  CHECK(dsolo["census"] == dquad["census"]);
  CHECK(dsolo["work"] == dquad["work"]);

  // gen is deterministic for a fixed seed.
  std::string g1 = scratch("det_a.json");
  std::string g2 = scratch("det_b.json");
  REQUIRE(run_cli("gen arrangement --n 2 --hyperplanes 5 --seed 11 -o " + g1).code == 0);
  REQUIRE(run_cli("gen arrangement --n 2 --hyperplanes 5 --seed 11 -o " + g2).code == 0);
  CHECK(read_file(g1) == read_file(g2));
}

TEST_CASE("resource limits surface as exit code 4") {
  RunResult r = run_cli("count " + data_file("abs.json") + " --defs 4 --max-patterns 1",
                        /*merge_stderr=*/true);
  CHECK(r.code == 4);
  CHECK(r.out.find("resource limit") != std::string::npos);
}
