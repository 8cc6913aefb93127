#pragma once

// A named diagnostic with its parameters, dispatchable against any sequence.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unlat/convergence.hpp"
#include "unlat/io.hpp"

namespace unlat {

enum class DiagnosticKind { Norm, Un, UnQip, InMeasure, Pointwise, Weak };

/// "norm", "un", "un_qip", "in_measure", "pointwise", "weak".
std::string_view to_string(DiagnosticKind k);
DiagnosticKind parse_diagnostic_kind(std::string_view s);

struct DiagnosticSpec {
  DiagnosticKind kind = DiagnosticKind::Norm;
  /// Limit for norm / un / un_qip; zero when absent.
  std::optional<Element> limit;
  /// Test vectors for un.
  std::vector<Element> tests;
  std::string family = "custom";
  /// Functional family for weak; `modulus` switches to <|f|,|x|>.
  std::vector<Element> functionals;
  bool modulus = false;
  double delta = 0.5;
};

TailReport evaluate(const VectorSequence& seq, const DiagnosticSpec& d, const ToleranceSpec& ts);

/// {"name": ..., parameters...}; only the fields the kind uses are written.
Json to_json(const DiagnosticSpec& d);
/// Unknown or misplaced fields raise ValidationError.
DiagnosticSpec diagnostic_from_json(const Json& j);

Json to_json(const TailReport& r);
Json to_json(const ToleranceSpec& ts);
/// Fields not present keep their defaults in `base`.
ToleranceSpec tolerance_from_json(const Json& j, ToleranceSpec base = {});

/// index,value lines with a header row.
std::string to_csv(const TailReport& r);

}  // namespace unlat
