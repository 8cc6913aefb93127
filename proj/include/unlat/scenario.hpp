#pragma once

// Scenario files: a source sequence, one diagnostic, tolerances and an
// optional expectation. Runs produce a JSON document and an exit code.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unlat/diagnostic.hpp"
#include "unlat/gallery.hpp"

namespace unlat {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitNumeric = 3 };

/// 2 for input problems (validation, tags, signs), 3 for numeric limits.
int exit_code_for(ErrorCode code);

struct Scenario {
  std::optional<std::string> gallery;
  std::vector<Element> inline_terms;
  DiagnosticSpec diagnostic;
  /// Tolerance fields given in the file, applied over the source defaults.
  Json tolerance = Json::object();
  /// "NULL", "NOT_NULL", "OK" or an error code name.
  std::optional<std::string> expect;
  std::string format = "json";
  std::optional<std::string> path;
};

/// Throws ValidationError on schema drift or unknown fields.
Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

VectorSequence scenario_sequence(const Scenario& s);

/// Settings layered over file contents: `defaults` apply beneath gallery and
/// file tolerances, `overrides` (command-line flags) on top.
struct RunSettings {
  ToleranceSpec defaults;
  Json overrides = Json::object();
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  Json document;
  int exit_code = kExitOk;
  std::optional<TailReport> report;
};

RunResult run_scenario(const Scenario& s, const RunSettings& settings = {});
/// Reads, validates and runs; parse and validation failures become exit 2
/// results rather than exceptions.
RunResult run_scenario_file(const std::filesystem::path& file, const RunSettings& settings = {});

struct SuiteResult {
  Json document;
  int exit_code = kExitOk;
  /// One row per file for a human summary.
  std::vector<std::string> rows;
};

/// Runs every *.json file in `dir` in sorted name order.
SuiteResult run_suite(const std::filesystem::path& dir, const RunSettings& settings = {});

/// One scenario per (entry, expectation), with the entry's tolerances spelled out.
std::vector<std::pair<std::string, Scenario>> gallery_scenarios();

}  // namespace unlat
