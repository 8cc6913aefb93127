#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "unlat/scenario.hpp"

using namespace unlat;
namespace fs = std::filesystem;

namespace {

Json parse(const char* s) { return Json::parse(s); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("unlat_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const LatticeError& e) {
    return e.code();
  }
  FAIL("no LatticeError thrown");
  return ErrorCode::ValidationError;
}

}  // namespace

TEST_CASE("scenario validation") {
  CHECK(code_of([] { scenario_from_json(parse("{}")); }) == ErrorCode::ValidationError);
  CHECK(code_of([] {
          scenario_from_json(parse(R"({"schema":2,"source":{"gallery":"typewriter"},"diagnostic":{"name":"norm"}})"));
        }) == ErrorCode::ValidationError);
  CHECK(code_of([] {
          scenario_from_json(
              parse(R"({"schema":1,"source":{"gallery":"typewriter"},"diagnostic":{"name":"norm"},"color":1})"));
        }) == ErrorCode::ValidationError);
  CHECK(code_of([] {
          scenario_from_json(parse(R"({"schema":1,"source":{"gallery":"nope"},"diagnostic":{"name":"norm"}})"));
        }) == ErrorCode::ValidationError);
  CHECK(code_of([] {
          scenario_from_json(
              parse(R"({"schema":1,"source":{"gallery":"typewriter"},"diagnostic":{"name":"norm","delta":1}})"));
        }) == ErrorCode::ValidationError);
  CHECK(code_of([] {
          scenario_from_json(parse(
              R"({"schema":1,"source":{"inline":{"terms":[{"tag":"l1","coords":{}},{"tag":"l2","coords":{}}]}},"diagnostic":{"name":"norm"}})"));
        }) == ErrorCode::ValidationError);
  CHECK(code_of([] {
          scenario_from_json(
              parse(R"({"schema":1,"source":{"gallery":"typewriter"},"diagnostic":{"name":"norm"},"expect":"MAYBE"})"));
        }) == ErrorCode::ValidationError);
}

TEST_CASE("run: gallery examples") {
  const Scenario tw = scenario_from_json(parse(
      R"({"schema":1,"source":{"gallery":"typewriter"},"diagnostic":{"name":"in_measure","delta":0.5},"expect":"NULL"})"));
  const RunResult r = run_scenario(tw);
  CHECK(r.exit_code == kExitOk);
  REQUIRE(r.report);
  CHECK(r.report->verdict == Verdict::Null);
  CHECK(r.document["status"] == "pass");

  const Scenario li = scenario_from_json(parse(
      R"({"schema":1,"source":{"gallery":"std_units_linf"},"diagnostic":{"name":"un","tests":[{"tag":"linf","coords":{"1":1,"2":1,"3":1}}]},"expect":"NOT_NULL","tolerance":{"window":200}})"));
  // the test vector only covers coordinates 1..3, so the tail is null: an expectation mismatch
  CHECK(run_scenario(li).exit_code == kExitMismatch);

  const Scenario err = scenario_from_json(
      parse(R"({"schema":1,"source":{"gallery":"std_units_c0"},"diagnostic":{"name":"in_measure"},"expect":"NonStepSequence"})"));
  CHECK(run_scenario(err).exit_code == kExitOk);
  const Scenario err2 = scenario_from_json(
      parse(R"({"schema":1,"source":{"gallery":"std_units_c0"},"diagnostic":{"name":"in_measure"}})"));
  const RunResult e2 = run_scenario(err2);
  CHECK(e2.exit_code == kExitUsage);
  CHECK(e2.document["error"]["code"] == "NonStepSequence");
}

TEST_CASE("tolerance layering") {
  const Scenario s = scenario_from_json(parse(
      R"({"schema":1,"source":{"gallery":"typewriter"},"diagnostic":{"name":"norm"},"tolerance":{"window":100}})"));
  RunSettings settings;
  settings.defaults.tol = 0.5;  // gallery tolerances sit above defaults
  RunResult r = run_scenario(s, settings);
  CHECK(r.report->tol == 1e-2);
  CHECK(r.report->window == 100);
  settings.overrides["tol"] = 1e-9;
  r = run_scenario(s, settings);
  CHECK(r.report->tol == 1e-9);
  CHECK(r.report->verdict == Verdict::NotNull);
}

TEST_CASE("run output is byte stable and round-trips doubles") {
  const Scenario s = scenario_from_json(parse(R"({"schema":1,"source":{"gallery":"overlap_l2"},"diagnostic":{"name":"un_qip"}})"));
  const std::string a = dump_json(run_scenario(s).document);
  const std::string b = dump_json(run_scenario(s).document);
  CHECK(a == b);
  const Json back = Json::parse(a);
  const auto vals = back["result"]["values"].get<std::vector<double>>();
  const TailReport direct = *run_scenario(s).report;
  CHECK(vals == direct.values);
  CHECK(to_csv(direct).rfind("index,value\n1,", 0) == 0);
  CHECK(to_json(s) == to_json(scenario_from_json(to_json(s))));
}

TEST_CASE("suite") {
  const fs::path dir = scratch("suite");
  for (const auto& [file, s] : gallery_scenarios()) write(dir / file, dump_json(to_json(s)));
  SuiteResult all = run_suite(dir);
  CHECK(all.exit_code == kExitOk);
  CHECK(all.document["failed"] == 0);
  CHECK(all.document["total"] == gallery_scenarios().size());

  write(dir / "aaa_corrupt.json", "{ not json");
  SuiteResult bad = run_suite(dir);
  CHECK(bad.exit_code == kExitUsage);
  CHECK(bad.document["runs"][0]["file"] == "aaa_corrupt.json");
  CHECK(bad.document["runs"][0]["status"] == "error");
  CHECK(bad.document["passed"] == gallery_scenarios().size());

  const fs::path empty = scratch("empty");
  SuiteResult none = run_suite(empty);
  CHECK(none.exit_code == kExitOk);
  CHECK(none.document["total"] == 0);
  CHECK(none.rows.empty());
  fs::remove_all(dir);
  fs::remove_all(empty);
}

TEST_CASE("run_scenario_file reports parse failures as exit 2") {
  const fs::path dir = scratch("file");
  write(dir / "empty.json", "{}");
  const RunResult r = run_scenario_file(dir / "empty.json");
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.document["error"]["code"] == "ValidationError");
  CHECK(run_scenario_file(dir / "missing.json").exit_code == kExitUsage);
  fs::remove_all(dir);
}
