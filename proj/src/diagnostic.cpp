#include "unlat/diagnostic.hpp"

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

Json elements_json(const std::vector<Element>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(element_to_json(x));
  return a;
}

std::vector<Element> elements_from(const Json& j, const char* field) {
  if (!j.is_array()) invalid(std::string("'") + field + "' must be an array of element literals");
  std::vector<Element> out;
  for (const auto& e : j) out.push_back(element_from_json(e));
  return out;
}

}  // namespace

std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::Norm: return "norm";
    case DiagnosticKind::Un: return "un";
    case DiagnosticKind::UnQip: return "un_qip";
    case DiagnosticKind::InMeasure: return "in_measure";
    case DiagnosticKind::Pointwise: return "pointwise";
    case DiagnosticKind::Weak: return "weak";
  }
  return "?";
}

DiagnosticKind parse_diagnostic_kind(std::string_view s) {
  for (auto k : {DiagnosticKind::Norm, DiagnosticKind::Un, DiagnosticKind::UnQip, DiagnosticKind::InMeasure,
                 DiagnosticKind::Pointwise, DiagnosticKind::Weak}) {
    if (to_string(k) == s) return k;
  }
  invalid("unknown diagnostic '" + std::string(s) + "'");
}

TailReport evaluate(const VectorSequence& seq, const DiagnosticSpec& d, const ToleranceSpec& ts) {
  const Element limit = d.limit ? *d.limit : zero(seq.tag());
  switch (d.kind) {
    case DiagnosticKind::Norm: return norm_tail(seq, limit, ts);
    case DiagnosticKind::Un: return un_tail(seq, limit, d.tests, ts, d.family);
    case DiagnosticKind::UnQip: return un_tail_qip(seq, limit, ts);
    case DiagnosticKind::InMeasure: return in_measure_tail(seq, d.delta, ts);
    case DiagnosticKind::Pointwise: return pointwise_tail(seq, ts);
    case DiagnosticKind::Weak: return weak_tail(seq, d.functionals, d.modulus, ts);
  }
  throw LatticeError(ErrorCode::InvalidArgument, "unknown diagnostic");
}

Json to_json(const DiagnosticSpec& d) {
  Json j;
  j["name"] = to_string(d.kind);
  switch (d.kind) {
    case DiagnosticKind::Norm:
    case DiagnosticKind::UnQip:
      if (d.limit) j["limit"] = element_to_json(*d.limit);
      break;
    case DiagnosticKind::Un:
      if (d.limit) j["limit"] = element_to_json(*d.limit);
      j["tests"] = elements_json(d.tests);
      j["family"] = d.family;
      break;
    case DiagnosticKind::InMeasure: j["delta"] = d.delta; break;
    case DiagnosticKind::Pointwise: break;
    case DiagnosticKind::Weak:
      j["functionals"] = elements_json(d.functionals);
      j["modulus"] = d.modulus;
      break;
  }
  return j;
}

DiagnosticSpec diagnostic_from_json(const Json& j) {
  if (!j.is_object()) invalid("diagnostic must be an object");
  if (!j.contains("name") || !j["name"].is_string()) invalid("diagnostic needs a string 'name'");
  DiagnosticSpec d;
  d.kind = parse_diagnostic_kind(j["name"].get<std::string>());
  const std::string what = "diagnostic '" + std::string(to_string(d.kind)) + "'";
  switch (d.kind) {
    case DiagnosticKind::Norm:
    case DiagnosticKind::UnQip: reject_unknown(j, {"name", "limit"}, what); break;
    case DiagnosticKind::Un: reject_unknown(j, {"name", "limit", "tests", "family"}, what); break;
    case DiagnosticKind::InMeasure: reject_unknown(j, {"name", "delta"}, what); break;
    case DiagnosticKind::Pointwise: reject_unknown(j, {"name"}, what); break;
    case DiagnosticKind::Weak: reject_unknown(j, {"name", "functionals", "modulus"}, what); break;
  }
  if (j.contains("limit")) d.limit = element_from_json(j["limit"]);
  if (d.kind == DiagnosticKind::Un) {
    if (!j.contains("tests")) invalid("un needs 'tests'");
    d.tests = elements_from(j["tests"], "tests");
    if (j.contains("family")) {
      if (!j["family"].is_string()) invalid("'family' must be a string");
      d.family = j["family"].get<std::string>();
    }
  }
  if (j.contains("delta")) {
    if (!j["delta"].is_number()) invalid("'delta' must be a number");
    d.delta = j["delta"].get<double>();
  }
  if (d.kind == DiagnosticKind::Weak) {
    if (!j.contains("functionals")) invalid("weak needs 'functionals'");
    d.functionals = elements_from(j["functionals"], "functionals");
    if (j.contains("modulus")) {
      if (!j["modulus"].is_boolean()) invalid("'modulus' must be a boolean");
      d.modulus = j["modulus"].get<bool>();
    }
  }
  return d;
}

Json to_json(const TailReport& r) {
  Json j;
  j["quantity"] = r.quantity;
  j["values"] = r.values;
  j["verdict"] = to_string(r.verdict);
  j["tol"] = r.tol;
  j["window"] = r.window;
  j["horizon"] = r.horizon;
  if (r.witness) {
    Json w{{"index", r.witness->index}, {"value", r.witness->value}};
    if (r.witness->probe) w["probe"] = *r.witness->probe;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  if (!r.family.empty()) j["family"] = r.family;
  if (r.against_family) j["against_family"] = true;
  if (r.refinement_level >= 0) j["refinement_level"] = r.refinement_level;
  if (!r.cell_limits.empty()) {
    Json cl = Json::array();
    for (const auto& c : r.cell_limits) cl.push_back(Json{{"cell", c.cell}, {"limsup", c.limsup}, {"liminf", c.liminf}});
    j["cell_limits"] = cl;
  }
  if (r.truncation_m) j["truncation_m"] = *r.truncation_m;
  return j;
}

Json to_json(const ToleranceSpec& ts) {
  return Json{{"tol", ts.tol}, {"window", ts.window}, {"horizon", ts.horizon}, {"max_level", ts.max_level}};
}

ToleranceSpec tolerance_from_json(const Json& j, ToleranceSpec base) {
  if (!j.is_object()) invalid("tolerance must be an object");
  reject_unknown(j, {"tol", "window", "horizon", "max_level"}, "tolerance");
  try {
    if (j.contains("tol")) base.tol = j["tol"].get<double>();
    if (j.contains("window")) base.window = j["window"].get<std::size_t>();
    if (j.contains("horizon")) base.horizon = j["horizon"].get<std::size_t>();
    if (j.contains("max_level")) base.max_level = j["max_level"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("bad tolerance: ") + e.what());
  }
  if (!(base.tol > 0.0)) invalid("tol must be > 0");
  return base;
}

std::string to_csv(const TailReport& r) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_double(r.values[i]) + "\n";
  }
  return out;
}

}  // namespace unlat
