#include "unlat/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <sstream>

namespace unlat {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw LatticeError(ErrorCode::ValidationError, what); }

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& what) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) invalid("unknown field '" + key + "' in " + what);
  }
}

std::optional<ErrorCode> parse_error_code(std::string_view s) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::ValidationError); ++c) {
    if (to_string(static_cast<ErrorCode>(c)) == s) return static_cast<ErrorCode>(c);
  }
  return std::nullopt;
}

Json error_json(ErrorCode code, const std::string& message) {
  return Json{{"code", std::string(to_string(code))}, {"message", message}};
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::TagMismatch:
    case ErrorCode::NegativeInput:
    case ErrorCode::NegativeTestVector:
    case ErrorCode::NonFinite:
    case ErrorCode::NonStepSequence:
    case ErrorCode::NotADecomposition:
    case ErrorCode::NotUnNull:
    case ErrorCode::NoRoom: return kExitUsage;
    default: return kExitNumeric;
  }
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object() || j.empty()) invalid("scenario must be a non-empty object");
  reject_unknown(j, {"schema", "source", "diagnostic", "tolerance", "expect", "output"}, "scenario");
  if (!j.contains("schema") || !j["schema"].is_number_integer()) invalid("scenario needs an integer 'schema'");
  if (j["schema"].get<int>() != kSchemaVersion) invalid("unsupported schema " + j["schema"].dump());
  if (!j.contains("source") || !j["source"].is_object()) invalid("scenario needs a 'source' object");
  if (!j.contains("diagnostic")) invalid("scenario needs a 'diagnostic'");

  Scenario s;
  const Json& src = j["source"];
  reject_unknown(src, {"gallery", "inline"}, "source");
  if (src.contains("gallery") == src.contains("inline")) invalid("source needs exactly one of 'gallery' or 'inline'");
  if (src.contains("gallery")) {
    if (!src["gallery"].is_string()) invalid("'gallery' must be a string");
    s.gallery = src["gallery"].get<std::string>();
    gallery_entry(*s.gallery);
  } else {
    const Json& in = src["inline"];
    if (!in.is_object()) invalid("'inline' must be an object");
    reject_unknown(in, {"terms"}, "inline source");
    if (!in.contains("terms") || !in["terms"].is_array() || in["terms"].empty()) {
      invalid("inline source needs a non-empty 'terms' array");
    }
    for (const auto& t : in["terms"]) s.inline_terms.push_back(element_from_json(t));
    for (const auto& t : s.inline_terms) {
      if (!(t.tag() == s.inline_terms.front().tag())) invalid("inline terms must share one tag");
    }
  }
  s.diagnostic = diagnostic_from_json(j["diagnostic"]);
  if (j.contains("tolerance")) {
    tolerance_from_json(j["tolerance"]);
    s.tolerance = j["tolerance"];
  }
  if (j.contains("expect")) {
    if (!j["expect"].is_string()) invalid("'expect' must be a string");
    const std::string e = j["expect"].get<std::string>();
    if (e != "NULL" && e != "NOT_NULL" && e != "OK" && !parse_error_code(e)) invalid("unknown expectation '" + e + "'");
    s.expect = e;
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    if (!o.is_object()) invalid("'output' must be an object");
    reject_unknown(o, {"format", "path"}, "output");
    if (o.contains("format")) {
      if (!o["format"].is_string()) invalid("'format' must be a string");
      s.format = o["format"].get<std::string>();
      if (s.format != "json" && s.format != "csv") invalid("format must be json or csv");
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) invalid("'path' must be a string");
      s.path = o["path"].get<std::string>();
    }
  }
  return s;
}

Json to_json(const Scenario& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  if (s.gallery) {
    j["source"] = Json{{"gallery", *s.gallery}};
  } else {
    Json terms = Json::array();
    for (const auto& t : s.inline_terms) terms.push_back(element_to_json(t));
    j["source"] = Json{{"inline", Json{{"terms", terms}}}};
  }
  j["diagnostic"] = to_json(s.diagnostic);
  if (!s.tolerance.empty()) j["tolerance"] = s.tolerance;
  if (s.expect) j["expect"] = *s.expect;
  if (s.format != "json" || s.path) {
    Json o{{"format", s.format}};
    if (s.path) o["path"] = *s.path;
    j["output"] = o;
  }
  return j;
}

VectorSequence scenario_sequence(const Scenario& s) {
  if (s.gallery) return gallery_entry(*s.gallery).sequence;
  return VectorSequence::from_terms(s.inline_terms, "inline");
}

RunResult run_scenario(const Scenario& s, const RunSettings& settings) {
  RunResult out;
  Json doc;
  doc["version"] = std::string(kVersion);
  doc["scenario"] = to_json(s);
  if (settings.seed) doc["seed"] = *settings.seed;

  std::optional<ErrorCode> expected_error;
  if (s.expect && s.expect != "NULL" && s.expect != "NOT_NULL" && s.expect != "OK") {
    expected_error = parse_error_code(*s.expect);
  }
  try {
    ToleranceSpec ts = s.gallery ? gallery_entry(*s.gallery).tolerance : settings.defaults;
    Json layered = to_json(ts);
    merge(layered, s.tolerance);
    merge(layered, settings.overrides);
    ts = tolerance_from_json(layered);
    doc["tolerance"] = to_json(ts);

    const VectorSequence seq = scenario_sequence(s);
    TailReport report = evaluate(seq, s.diagnostic, ts);
    doc["result"] = to_json(report);
    if (expected_error) {
      doc["status"] = "fail";
      out.exit_code = kExitMismatch;
    } else if (s.expect && s.expect != "OK" && *s.expect != to_string(report.verdict)) {
      doc["status"] = "fail";
      out.exit_code = kExitMismatch;
    } else {
      doc["status"] = "pass";
    }
    out.report = std::move(report);
  } catch (const LatticeError& e) {
    doc["error"] = error_json(e.code(), e.what());
    if (expected_error && *expected_error == e.code()) {
      doc["status"] = "pass";
    } else {
      doc["status"] = "error";
      out.exit_code = exit_code_for(e.code());
    }
  } catch (const std::exception& e) {
    doc["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    doc["status"] = "error";
    out.exit_code = kExitNumeric;
  }
  if (s.expect) doc["expect"] = *s.expect;
  out.document = std::move(doc);
  return out;
}

RunResult run_scenario_file(const std::filesystem::path& file, const RunSettings& settings) {
  std::optional<Scenario> scenario;
  try {
    std::ifstream in(file);
    if (!in) invalid("cannot open " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
      j = Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      invalid(std::string("malformed JSON: ") + e.what());
    }
    scenario = scenario_from_json(j);
  } catch (const LatticeError& e) {
    RunResult r;
    r.exit_code = exit_code_for(e.code());
    r.document = Json{{"version", std::string(kVersion)},
                      {"file", file.filename().string()},
                      {"status", "error"},
                      {"error", error_json(e.code(), e.what())}};
    return r;
  }
  RunSettings local = settings;
  if (!local.format && scenario->format != "json") local.format = scenario->format;
  RunResult r = run_scenario(*scenario, local);
  return r;
}

SuiteResult run_suite(const std::filesystem::path& dir, const RunSettings& settings) {
  if (!std::filesystem::is_directory(dir)) invalid("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::future<RunResult>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, settings] { return run_scenario_file(f, settings); }));
  }
  SuiteResult out;
  Json runs = Json::array();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    RunResult r = jobs[i].get();
    const std::string name = files[i].filename().string();
    const std::string status = r.document.value("status", "error");
    Json row{{"file", name}, {"status", status}, {"exit_code", r.exit_code}};
    if (r.report) row["verdict"] = to_string(r.report->verdict);
    if (r.document.contains("expect")) row["expect"] = r.document["expect"];
    if (r.document.contains("error")) row["error"] = r.document["error"];
    runs.push_back(row);
    if (r.exit_code == kExitOk) ++passed;
    out.exit_code = std::max(out.exit_code, r.exit_code);

    std::string line = name;
    line.resize(std::max<std::size_t>(line.size() + 1, 48), ' ');
    line += status;
    if (r.report) line += "  " + std::string(to_string(r.report->verdict));
    if (r.document.contains("error")) line += "  " + r.document["error"]["code"].get<std::string>();
    out.rows.push_back(line);
  }
  out.document = Json{{"version", std::string(kVersion)},
                      {"directory", dir.filename().string()},
                      {"total", files.size()},
                      {"passed", passed},
                      {"failed", files.size() - passed},
                      {"runs", runs}};
  return out;
}

std::vector<std::pair<std::string, Scenario>> gallery_scenarios() {
  std::vector<std::pair<std::string, Scenario>> out;
  for (const auto& entry : gallery()) {
    for (const auto& ex : entry.expected) {
      std::string slug;
      for (char c : ex.label) slug += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
      Scenario s;
      s.gallery = entry.name;
      s.diagnostic = ex.diagnostic;
      s.tolerance = to_json(entry.tolerance);
      s.expect = std::string(to_string(ex.verdict));
      out.emplace_back(entry.name + "__" + slug + ".json", std::move(s));
    }
  }
  return out;
}

}  // namespace unlat
