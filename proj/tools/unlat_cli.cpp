// unlat: run convergence scenarios, gallery entries and topology checks.
//
// Environment defaults (overridden by flags and scenario files):
//   UNLAT_TOL, UNLAT_WINDOW, UNLAT_HORIZON, UNLAT_FORMAT, UNLAT_SEED

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "unlat/constructive.hpp"
#include "unlat/scenario.hpp"
#include "unlat/topology.hpp"

namespace fs = std::filesystem;
using namespace unlat;

namespace {

struct Flags {
  std::optional<double> tol;
  std::optional<std::size_t> window;
  std::optional<std::size_t> horizon;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
};

template <class T>
std::optional<T> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    if constexpr (std::is_same_v<T, double>) return std::stod(v);
    else if constexpr (std::is_same_v<T, std::string>) return std::string(v);
    else return static_cast<T>(std::stoull(v));
  } catch (const std::exception&) {
    throw LatticeError(ErrorCode::ValidationError, std::string("bad value for ") + name);
  }
}

RunSettings settings_from(const Flags& f) {
  RunSettings s;
  if (auto v = env<double>("UNLAT_TOL")) s.defaults.tol = *v;
  if (auto v = env<std::size_t>("UNLAT_WINDOW")) s.defaults.window = *v;
  if (auto v = env<std::size_t>("UNLAT_HORIZON")) s.defaults.horizon = *v;
  s.format = f.format ? f.format : env<std::string>("UNLAT_FORMAT");
  s.seed = f.seed ? f.seed : env<std::uint64_t>("UNLAT_SEED");
  if (f.tol) s.overrides["tol"] = *f.tol;
  if (f.window) s.overrides["window"] = *f.window;
  if (f.horizon) s.overrides["horizon"] = *f.horizon;
  if (s.format && *s.format != "json" && *s.format != "csv") {
    throw LatticeError(ErrorCode::ValidationError, "format must be json or csv");
  }
  return s;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw LatticeError(ErrorCode::ValidationError, "cannot write " + *path);
  out << text;
}

Scenario load_scenario(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw LatticeError(ErrorCode::ValidationError, "cannot open " + file);
  try {
    return scenario_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(ErrorCode::ValidationError, std::string("malformed JSON: ") + e.what());
  }
}

int cmd_run(const std::string& file, const Flags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  RunSettings settings = settings_from(flags);
  RunResult r = run_scenario_file(file, settings);
  std::optional<std::string> path;
  std::string format = settings.format.value_or("json");
  if (r.document.contains("scenario") && r.document["scenario"].contains("output")) {
    const Json& o = r.document["scenario"]["output"];
    if (!settings.format && o.contains("format")) format = o["format"].get<std::string>();
    if (o.contains("path")) path = o["path"].get<std::string>();
  }
  if (format == "csv" && r.report) {
    emit(to_csv(*r.report), path);
  } else {
    emit(dump_json(r.document) + "\n", path);
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "status " << r.document.value("status", "error") << ", " << ms << " ms\n";
  return r.exit_code;
}

int cmd_suite(const std::string& dir, const Flags& flags) {
  SuiteResult r = run_suite(dir, settings_from(flags));
  std::cout << dump_json(r.document) << "\n";
  if (r.rows.empty()) {
    std::cerr << "warning: no scenario files in " << dir << "\n";
    return kExitOk;
  }
  for (const auto& row : r.rows) std::cerr << row << "\n";
  std::cerr << r.document["passed"].get<std::size_t>() << "/" << r.document["total"].get<std::size_t>()
            << " passed\n";
  return r.exit_code;
}

Json entry_json(const GalleryEntry& e, bool with_terms) {
  Json j;
  j["name"] = e.name;
  j["tag"] = e.sequence.tag().name();
  j["length"] = e.sequence.length();
  j["tolerance"] = to_json(e.tolerance);
  j["description"] = e.provenance;
  Json ex = Json::array();
  for (const auto& x : e.expected) {
    ex.push_back(Json{{"label", x.label}, {"diagnostic", std::string(to_string(x.diagnostic.kind))},
                      {"verdict", std::string(to_string(x.verdict))}});
  }
  j["expected"] = ex;
  if (with_terms) {
    Json terms = Json::array();
    for (const auto& t : e.sequence.terms()) terms.push_back(element_to_json(t));
    j["terms"] = terms;
  }
  return j;
}

int cmd_gallery(const std::string& action, const std::string& arg) {
  if (action == "list") {
    for (const auto& n : gallery_names()) {
      const GalleryEntry e = gallery_entry(n);
      std::cout << n << "\t" << e.sequence.tag().name() << "\t" << e.sequence.length() << "\t" << e.provenance << "\n";
    }
    return kExitOk;
  }
  if (action == "dump") {
    if (arg.empty()) throw LatticeError(ErrorCode::ValidationError, "gallery dump needs an entry name");
    std::cout << dump_json(entry_json(gallery_entry(arg), true)) << "\n";
    return kExitOk;
  }
  if (action == "export") {
    if (arg.empty()) throw LatticeError(ErrorCode::ValidationError, "gallery export needs a directory");
    fs::create_directories(arg);
    std::size_t n = 0;
    for (const auto& [file, s] : gallery_scenarios()) {
      std::ofstream out(fs::path(arg) / file);
      out << dump_json(to_json(s)) << "\n";
      ++n;
    }
    std::cerr << "wrote " << n << " scenarios to " << arg << "\n";
    return kExitOk;
  }
  throw LatticeError(ErrorCode::ValidationError, "gallery action must be list, dump or export");
}

int cmd_axioms(const std::string& tag_name, std::size_t samples, const Flags& flags) {
  const RunSettings s = settings_from(flags);
  const std::uint64_t seed = s.seed.value_or(0);
  const auto reports = axiom_suite(parse_tag(tag_name), samples, seed);
  Json j;
  j["version"] = std::string(kVersion);
  j["tag"] = tag_name;
  j["seed"] = seed;
  Json arr = Json::array();
  std::size_t failures = 0;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    failures += r.failures;
  }
  j["axioms"] = arr;
  std::cout << dump_json(j) << "\n";
  return failures == 0 ? kExitOk : kExitMismatch;
}

Json kp_json(const DisjointificationResult& r, bool parts) {
  Json j;
  j["selected_indices"] = r.selected_indices;
  j["residual_norms"] = r.residual_norms;
  j["perturbation_norms"] = r.perturbation_norms;
  j["meet_matrix"] = r.meet_matrix;
  j["precondition_met"] = r.precondition_met;
  j["precondition_note"] = r.precondition_note;
  j["disjoint_verified"] = r.disjoint_verified;
  j["residuals_bounded"] = r.residuals_bounded;
  j["meets_bounded"] = r.meets_bounded;
  if (parts) {
    Json a = Json::array();
    for (const auto& d : r.disjoint_parts) a.push_back(element_to_json(d));
    j["disjoint_parts"] = a;
  }
  return j;
}

int cmd_kp(const std::string& file, std::size_t count, bool parts, const Flags& flags) {
  const Scenario s = load_scenario(file);
  const RunSettings settings = settings_from(flags);
  ToleranceSpec ts = s.gallery ? gallery_entry(*s.gallery).tolerance : settings.defaults;
  Json layered = to_json(ts);
  for (const auto& [k, v] : s.tolerance.items()) layered[k] = v;
  for (const auto& [k, v] : settings.overrides.items()) layered[k] = v;
  ts = tolerance_from_json(layered);
  Json doc;
  doc["version"] = std::string(kVersion);
  doc["source"] = to_json(s)["source"];
  doc["count"] = count;
  int code = kExitOk;
  try {
    DisjointificationResult r = kp_disjointify(scenario_sequence(s), count, ts);
    doc["result"] = kp_json(r, parts);
    if (!r.verified()) code = kExitNumeric;
  } catch (const HorizonExhausted& e) {
    doc["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"step", e.step()},
                        {"bound", e.bound()}};
    doc["partial"] = kp_json(e.partial(), parts);
    code = exit_code_for(e.code());
  }
  std::cout << dump_json(doc) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unlat: un-convergence toolkit for Banach lattice models"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags flags;
  auto add_common = [&flags](CLI::App* c) {
    c->add_option("--tol", flags.tol, "Tail tolerance");
    c->add_option("--window", flags.window, "Trailing window length (0 = N/4)");
    c->add_option("--horizon", flags.horizon, "Coordinate horizon");
    c->add_option("--format", flags.format, "json or csv");
    c->add_option("--seed", flags.seed, "RNG seed");
  };

  std::string file, dir, action, arg, tag;
  std::size_t samples = 10000, count = 8;
  bool dump_parts = false;

  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("file", file)->required();
  add_common(run);

  auto* suite = app.add_subcommand("suite", "Run every scenario in a directory");
  suite->add_option("dir", dir)->required();
  add_common(suite);

  auto* gal = app.add_subcommand("gallery", "list | dump <name> | export <dir>");
  gal->add_option("action", action)->required();
  gal->add_option("arg", arg);

  auto* ax = app.add_subcommand("axioms", "Randomised neighborhood-base checks for a tag");
  ax->add_option("tag", tag)->required();
  ax->add_option("--samples", samples, "Samples per axiom");
  add_common(ax);

  auto* kp = app.add_subcommand("kp", "Disjointify the source of a scenario");
  kp->add_option("file", file)->required();
  kp->add_option("--count", count, "Number of disjoint parts")->required();
  kp->add_flag("--dump-parts", dump_parts, "Include the disjoint parts");
  add_common(kp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(file, flags);
    if (*suite) return cmd_suite(dir, flags);
    if (*gal) return cmd_gallery(action, arg);
    if (*ax) return cmd_axioms(tag, samples, flags);
    if (*kp) return cmd_kp(file, count, dump_parts, flags);
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
