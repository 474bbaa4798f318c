#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "charpoly/error.hpp"
#include "charpoly/report.hpp"

using namespace charpoly;

namespace {
std::string fixture(const std::string& name) {
  std::ifstream in(std::filesystem::path(CHARPOLY_FIXTURE_DIR) / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("polyhedron report") {
  auto rep = run("polyhedron", fixture("poly_gen_dependent_f.txt"));
  CHECK(rep.exit == ExitCode::Ok);
  CHECK(rep.json["result"]["vertices"] == nlohmann::json::array({"3/2,0", "0,7/3"}));
  CHECK(rep.json["result"]["facets"] == nlohmann::json::array({"2/3,3/7"}));
  CHECK(rep.json["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  REQUIRE(rep.plot);
}

TEST_CASE("prepare and measure reports") {
  auto rep = run("prepare", fixture("hiro_infinite.txt"));
  CHECK(rep.exit == ExitCode::Ok);
  CHECK(rep.json["result"]["substitutions"] == nlohmann::json::array({"z = y + y^2 + u1^2"}));
  CHECK(rep.json["result"]["polyhedron"]["vertices"] == nlohmann::json::array({"0,7/2"}));

  RunFlags plain;
  plain.plain = true;
  auto cyc = run("prepare", fixture("hiro_infinite.txt"), plain);
  CHECK(cyc.exit == ExitCode::Budget);
  CHECK(cyc.json["status"] == "budget-exhausted");
  CHECK(cyc.json["result"]["cycle"] == nlohmann::json::array({"2,0", "4,0", "8,0"}));

  auto m = run("measure", fixture("hiro_infinite.txt"));
  CHECK(m.json["result"]["lambda"] == "1");
}

TEST_CASE("exit codes") {
  CHECK(run("polyhedron", "").exit == ExitCode::InvalidInput);
  CHECK(run("polyhedron", "").json["error"] == "invalid input: no generators");
  CHECK(run("frobnicate", fixture("loop.txt")).exit == ExitCode::InvalidInput);
  CHECK(run("pair-polyhedron", fixture("loop.txt")).exit == ExitCode::InvalidInput);
  CHECK(run("polyhedron", "field Q\nvars u: u ; y: y\ngen f = u*y\n").exit == ExitCode::InvalidInput);
  RunFlags tight;
  tight.budget_overrides["events"] = 1;
  CHECK(run("prepare", fixture("hiro_infinite.txt"), tight).exit == ExitCode::Budget);
}

TEST_CASE("every command on every fixture yields a well-formed report") {
  for (const auto& entry : std::filesystem::directory_iterator(CHARPOLY_FIXTURE_DIR)) {
    std::string text = fixture(entry.path().filename().string());
    for (const auto& cmd : commands()) {
      auto rep = run(cmd, text);
      CAPTURE(entry.path().filename().string());
      CAPTURE(cmd);
      CHECK(rep.json["exit_code"] == static_cast<int>(rep.exit));
      CHECK(rep.json.contains("timing_ms"));
      if (rep.exit == ExitCode::Ok) CHECK(rep.json.contains("result"));
      else if (rep.exit == ExitCode::InvalidInput) CHECK(rep.json.contains("error"));
    }
  }
}

TEST_CASE("budgets") {
  auto b = parse_budget_list("events=5, search_log2=8");
  CHECK(b.at("events") == 5);
  CHECK_THROWS_AS(parse_budget_list("nope=1"), InvalidInput);
  CHECK_THROWS_AS(parse_budget_list("events"), InvalidInput);
  CHECK_THROWS_AS(parse_budget_list("events=-1"), InvalidInput);

  ProblemFile p = parse_problem("field Q\nvars u: u ; y: y\ngen f = y\nbudget events = 7\nbudget strong_steps = 3\n");
  RunFlags flags;
  flags.budget_defaults = {{"events", 1}, {"search_log2", 4}};
  flags.budget_overrides = {{"strong_steps", 9}};
  Budget r = resolve_budget(p, flags);
  CHECK(r.events == 7);
  CHECK(r.search_log2 == 4);
  CHECK(r.strong_steps == 9);
  flags.budget_overrides = {{"events", 0}};
  CHECK_THROWS_AS(resolve_budget(p, flags), InvalidInput);
}

TEST_CASE("digest and svg are deterministic") {
  CHECK(input_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(input_digest("a") == "fnv1a64:af63dc4c8601ec8c");
  auto a = run("polyhedron", fixture("poly_gen_dependent_f.txt"));
  auto b = run("polyhedron", fixture("poly_gen_dependent_f.txt"));
  std::string svg = render_svg(*a.plot, "f");
  CHECK(svg == render_svg(*b.plot, "f"));
  CHECK(svg.find("width=\"600\" height=\"600\"") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find(">(3/2,0)<") != std::string::npos);
  CHECK(render_svg(FSubset(2)).find(">empty<") != std::string::npos);
  CHECK_THROWS_AS(render_svg(FSubset(3)), InvalidInput);
}
