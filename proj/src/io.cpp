#include "unlat/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

namespace unlat {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw LatticeError(ErrorCode::ValidationError, what); }

double parse_p(std::string_view s, std::string_view whole) {
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
  if (ec != std::errc{} || ptr != s.data() + s.size()) invalid("bad exponent in tag '" + std::string(whole) + "'");
  return p;
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, const char* what) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) invalid(std::string("unknown field '") + key + "' in " + what);
  }
}

Json coords_to_json(const LatticeVector& v) {
  Json c = Json::object();
  for (const auto& [i, x] : v.entries()) c[std::to_string(i)] = x;
  return c;
}

LatticeVector coords_from_json(const SpaceTag& tag, const Json& c) {
  if (!c.is_object()) invalid("coords must be an object of index -> value");
  std::vector<LatticeVector::Entry> entries;
  for (const auto& [key, val] : c.items()) {
    std::size_t idx = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
    if (ec != std::errc{} || ptr != key.data() + key.size() || idx == 0) invalid("bad coordinate index '" + key + "'");
    if (!val.is_number()) invalid("coordinate " + key + " is not a number");
    entries.emplace_back(idx, val.get<double>());
  }
  return LatticeVector(tag, std::move(entries));
}

void write_string(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void write(std::string& out, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, val] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, key);
        out += indent < 0 ? ":" : ": ";
        write(out, val, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += scalars ? (indent < 0 ? "," : ", ") : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::string: write_string(out, j.get<std::string>()); return;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case Json::value_t::number_float: out += format_double(j.get<double>()); return;
    case Json::value_t::null:
    case Json::value_t::discarded:
    case Json::value_t::binary: out += "null"; return;
  }
}

}  // namespace

SpaceTag parse_tag(std::string_view name) {
  if (name == "c0") return SpaceTag::c0();
  if (name == "linf") return SpaceTag::linf();
  if (name == "l1+linf") return SpaceTag::direct_sum();
  try {
    if (name.size() > 1 && name[0] == 'l') return SpaceTag::lp(parse_p(name.substr(1), name));
    if (name.size() > 1 && name[0] == 'L') return SpaceTag::lp_step(parse_p(name.substr(1), name));
  } catch (const LatticeError& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(e.what());
  }
  invalid("unknown tag '" + std::string(name) + "'");
}

Json element_to_json(const Element& x) {
  Json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LatticeVector>) {
          j["tag"] = v.tag().name();
          j["coords"] = coords_to_json(v);
        } else if constexpr (std::is_same_v<T, StepFunction>) {
          j["tag"] = "L" + v.tag().name().substr(1, v.tag().name().find('(') - 1);
          j["level"] = v.level();
          j["values"] = std::vector<double>(v.values().begin(), v.values().end());
          if (!(v.tag().measure() == MeasureModel::lebesgue())) j["weights"] = v.tag().measure().refined(v.level());
        } else {
          j["tag"] = "l1+linf";
          j["left"] = coords_to_json(v.left());
          j["right"] = coords_to_json(v.right());
        }
      },
      x.variant());
  return j;
}

Element element_from_json(const Json& j) {
  if (!j.is_object()) invalid("element literal must be an object");
  if (!j.contains("tag") || !j["tag"].is_string()) invalid("element literal needs a string 'tag'");
  const std::string tag_name = j["tag"].get<std::string>();
  try {
    SpaceTag tag = parse_tag(tag_name);
    switch (tag.kind()) {
      case SpaceKind::C0:
      case SpaceKind::Lp:
      case SpaceKind::LInftySeq:
        reject_unknown(j, {"tag", "coords"}, "sequence literal");
        return coords_from_json(tag, j.value("coords", Json::object()));
      case SpaceKind::LpStep: {
        reject_unknown(j, {"tag", "level", "values", "weights"}, "step literal");
        if (!j.contains("level") || !j["level"].is_number_integer()) invalid("step literal needs integer 'level'");
        if (!j.contains("values") || !j["values"].is_array()) invalid("step literal needs 'values'");
        const int level = j["level"].get<int>();
        auto values = j["values"].get<std::vector<double>>();
        if (j.contains("weights")) {
          tag = SpaceTag::lp_step(tag.p(), MeasureModel(level, j["weights"].get<std::vector<double>>()));
        }
        return StepFunction(tag, level, std::move(values));
      }
      case SpaceKind::DirectSumL1Linf:
        reject_unknown(j, {"tag", "left", "right"}, "direct-sum literal");
        return DirectSumVector(coords_from_json(SpaceTag::lp(1.0), j.value("left", Json::object())),
                               coords_from_json(SpaceTag::linf(), j.value("right", Json::object())));
    }
  } catch (const LatticeError& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(std::string("bad element literal: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("bad element literal: ") + e.what());
  }
  invalid("unsupported tag '" + tag_name + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

}  // namespace unlat
