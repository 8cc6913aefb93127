#pragma once

// Sequence-convergence diagnostics. Every diagnostic turns a finite
// sequence into a TailReport: one non-negative value per term plus a
// verdict. "-> 0" is rendered as: every value in the final window is < tol.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unlat/lattice.hpp"
#include "unlat/sequence.hpp"

namespace unlat {

struct ToleranceSpec {
  double tol = 1e-6;
  /// Number of trailing terms checked; 0 means "length / 4".
  std::size_t window = 0;
  /// Coordinate horizon used for truncated infinite objects (q.i. points).
  std::size_t horizon = kDefaultHorizon;
  /// Finest dyadic level a diagnostic may refine to.
  int max_level = kDefaultMaxLevel;

  /// Resolved window for a sequence of `length` terms. Throws
  /// InvalidArgument if tol <= 0 or the window exceeds the length.
  std::size_t window_for(std::size_t length) const;
};

enum class Verdict { Null, NotNull };

std::string_view to_string(Verdict v);
/// "NULL" / "NOT_NULL"; throws ValidationError otherwise.
Verdict parse_verdict(std::string_view s);

struct Witness {
  /// 1-based term index of the first violation in the window.
  std::size_t index = 0;
  double value = 0.0;
  /// Position of the violating test vector / functional in its family.
  std::optional<std::size_t> probe;
};

/// Per-cell (or per-coordinate) limits over the latter half of the horizon.
struct CellLimit {
  std::size_t cell = 0;
  double limsup = 0.0;
  double liminf = 0.0;
};

struct TailReport {
  std::string quantity;
  std::vector<double> values;
  Verdict verdict = Verdict::Null;
  double tol = 0.0;
  std::size_t window = 0;
  std::size_t horizon = 0;
  std::optional<Witness> witness;
  /// Names the test family when the verdict is relative to one.
  std::string family;
  /// True when NULL only certifies nullity against a finite family.
  bool against_family = false;

  // pointwise_tail extras
  std::vector<CellLimit> cell_limits;
  int refinement_level = -1;

  // un_tail_qip extras
  std::optional<std::size_t> truncation_m;
};

/// Fills verdict and witness of `report` from its values (first violation
/// in the window; probe taken from `probes` when given).
void finalize(TailReport& report, const std::vector<std::size_t>* probes = nullptr);

/// values[n] = ||x_n - limit||.
TailReport norm_tail(const VectorSequence& seq, const Element& limit, const ToleranceSpec& ts = {});

/// values[n] = max over tests u of || |x_n - limit| AND u ||. Tests must be
/// positive and nonzero (NegativeTestVector otherwise).
TailReport un_tail(const VectorSequence& seq, const Element& limit, const std::vector<Element>& tests,
                   const ToleranceSpec& ts = {}, std::string family = "custom");

/// Request for the smallest m with ||u - u AND m e|| < eps.
struct TruncationRequest {
  Element u;
  double eps;
  std::size_t m_max = 1u << 20;
};

/// Smallest m in 1..m_max with ||u - u AND m e|| < eps; throws MNotFound.
std::size_t select_truncation_level(const Element& u, const Element& e, double eps, std::size_t m_max);

/// un_tail against the single quasi-interior point of the tag. When a
/// truncation request is supplied, report.truncation_m holds its answer.
TailReport un_tail_qip(const VectorSequence& seq, const Element& limit, const ToleranceSpec& ts = {},
                       const std::optional<TruncationRequest>& truncation = std::nullopt);

/// values[n] = mu{ |f_n| > delta }. Throws NonStepSequence for non-step tags.
TailReport in_measure_tail(const VectorSequence& seq, double delta, const ToleranceSpec& ts = {});

/// uo / a.e. proxy.
///  - Atomic (sequence) tags: values[n] = max |x_n(c)| over coordinates c
///    first touched at least `window` terms earlier, so a coordinate is
///    judged only once it has been in play for a full window.
///  - Step tags: values[n] = mu( union over the trailing `window` terms m
///    of {|f_m| >= tol} ), the measure of the recent exceedance set; NULL
///    means cellwise null off a set of measure < tol.
/// cell_limits carries per-cell limsup / liminf of |x_n(c)| over n > N/2.
/// Throws RefinementOverflow past ts.max_level, InvalidArgument for the
/// direct sum.
TailReport pointwise_tail(const VectorSequence& seq, const ToleranceSpec& ts = {});

/// values[n] = max_f |<f, x_n>| or, with modulus, max_f <|f|, |x_n|>.
/// Verdicts are relative to the finite functional family.
TailReport weak_tail(const VectorSequence& seq, const std::vector<Element>& functionals, bool modulus,
                     const ToleranceSpec& ts = {});

/// Schedule certifying order convergence to 0 in an atomic model.
struct OrderWitness {
  /// v_k for k = 1..K.
  std::vector<Element> dominators;
  /// n_k (1-based): |x_n| <= v_k for every n >= n_k in the horizon.
  std::vector<std::size_t> indices;
  std::vector<double> dominator_norms;
};

/// Builds v_k = sum_{i<=k} (1/k AND u_i) a_i + sum_{i>k} u_i a_i over the
/// atoms a_i of supp(bound) (increasing index order), k = 1..K with
/// K = schedule_length (0 means |supp(bound)|), and finds each n_k.
/// Throws NotOrderBounded if some |x_n| exceeds bound, NoIndexFound if
/// some n_k does not exist in the horizon.
OrderWitness order_witness_atomic(const VectorSequence& seq, const Element& bound, std::size_t schedule_length = 0);

struct AlmostOrderBoundedResult {
  bool passed = false;
  /// 0-based position of the maximiser of ||(|x| - u)^+||.
  std::size_t worst = 0;
  double worst_value = 0.0;
};

/// True iff ||(|x| - u)^+|| < eps for every listed x.
AlmostOrderBoundedResult almost_order_bounded_check(const std::vector<Element>& vectors, const Element& u, double eps);

}  // namespace unlat
