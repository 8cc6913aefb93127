#include "unlat/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace unlat {

std::size_t ToleranceSpec::window_for(std::size_t length) const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw LatticeError(ErrorCode::InvalidArgument, "tol must be > 0");
  if (length == 0) throw LatticeError(ErrorCode::InvalidArgument, "empty sequence");
  const std::size_t w = window == 0 ? std::max<std::size_t>(1, length / 4) : window;
  if (w > length) {
    throw LatticeError(ErrorCode::InvalidArgument,
                       "window " + std::to_string(w) + " exceeds sequence length " + std::to_string(length));
  }
  return w;
}

std::string_view to_string(Verdict v) { return v == Verdict::Null ? "NULL" : "NOT_NULL"; }

Verdict parse_verdict(std::string_view s) {
  if (s == "NULL") return Verdict::Null;
  if (s == "NOT_NULL") return Verdict::NotNull;
  throw LatticeError(ErrorCode::ValidationError, "verdict must be NULL or NOT_NULL, got '" + std::string(s) + "'");
}

void finalize(TailReport& report, const std::vector<std::size_t>* probes) {
  const std::size_t n = report.values.size();
  report.verdict = Verdict::Null;
  report.witness.reset();
  for (std::size_t i = n - report.window; i < n; ++i) {
    if (!(report.values[i] < report.tol)) {
      report.verdict = Verdict::NotNull;
      Witness w{i + 1, report.values[i], std::nullopt};
      if (probes) w.probe = (*probes)[i];
      report.witness = w;
      break;
    }
  }
}

namespace {

TailReport start_report(std::string quantity, const VectorSequence& seq, const ToleranceSpec& ts) {
  TailReport r;
  r.quantity = std::move(quantity);
  r.tol = ts.tol;
  r.window = ts.window_for(seq.length());
  r.horizon = ts.horizon;
  r.values.reserve(seq.length());
  return r;
}

void require_tests(const SpaceTag& tag, const std::vector<Element>& tests, const char* what) {
  if (tests.empty()) throw LatticeError(ErrorCode::InvalidArgument, std::string(what) + " family is empty");
  for (const auto& u : tests) {
    if (!(u.tag() == tag)) {
      throw LatticeError(ErrorCode::TagMismatch, std::string(what) + " tagged " + u.tag().name() + ", sequence " + tag.name());
    }
  }
}

}  // namespace

TailReport norm_tail(const VectorSequence& seq, const Element& limit, const ToleranceSpec& ts) {
  require_same_tag(zero(seq.tag()), limit);
  TailReport r = start_report("norm", seq, ts);
  for (std::size_t n = 1; n <= seq.length(); ++n) r.values.push_back(norm(seq.at(n) - limit));
  finalize(r);
  return r;
}

TailReport un_tail(const VectorSequence& seq, const Element& limit, const std::vector<Element>& tests,
                   const ToleranceSpec& ts, std::string family) {
  require_same_tag(zero(seq.tag()), limit);
  require_tests(seq.tag(), tests, "test vector");
  for (const auto& u : tests) {
    if (!is_positive(u)) throw LatticeError(ErrorCode::NegativeTestVector, "test vectors must be >= 0");
    if (is_zero(u)) throw LatticeError(ErrorCode::NegativeTestVector, "test vectors must be nonzero");
  }
  TailReport r = start_report("un", seq, ts);
  r.family = std::move(family);
  r.against_family = true;
  std::vector<std::size_t> probes;
  probes.reserve(seq.length());
  for (std::size_t n = 1; n <= seq.length(); ++n) {
    const Element d = abs(seq.at(n) - limit);
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const double v = norm(meet(d, tests[t]));
      if (v > best) {
        best = v;
        arg = t;
      }
    }
    r.values.push_back(best);
    probes.push_back(arg);
  }
  finalize(r, &probes);
  return r;
}

std::size_t select_truncation_level(const Element& u, const Element& e, double eps, std::size_t m_max) {
  if (!(eps > 0.0)) throw LatticeError(ErrorCode::InvalidArgument, "eps must be > 0");
  if (m_max == 0) throw LatticeError(ErrorCode::InvalidArgument, "m_max must be >= 1");
  // ||u - u AND m e|| is non-increasing in m: gallop, then bisect.
  auto ok = [&](std::size_t m) { return norm(u - truncate(u, e, static_cast<double>(m))) < eps; };
  std::size_t hi = 1;
  while (!ok(hi)) {
    if (hi >= m_max) {
      throw LatticeError(ErrorCode::MNotFound, "no m <= " + std::to_string(m_max) + " reaches eps");
    }
    hi = std::min(m_max, hi * 2);
  }
  std::size_t lo = hi / 2;  // ok(lo) is false (or lo == 0)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

TailReport un_tail_qip(const VectorSequence& seq, const Element& limit, const ToleranceSpec& ts,
                       const std::optional<TruncationRequest>& truncation) {
  const Element e = quasi_interior_point(seq.tag(), ts.horizon);
  TailReport r = un_tail(seq, limit, {e}, ts, "quasi-interior point");
  r.quantity = "un_qip";
  // A single quasi-interior point decides un-nullity; no family caveat.
  r.against_family = false;
  if (truncation) {
    require_same_tag(truncation->u, e);
    r.truncation_m = select_truncation_level(truncation->u, e, truncation->eps, truncation->m_max);
  }
  return r;
}

TailReport in_measure_tail(const VectorSequence& seq, double delta, const ToleranceSpec& ts) {
  if (!seq.tag().is_step()) {
    throw LatticeError(ErrorCode::NonStepSequence, "in-measure diagnostic needs a step sequence, got " + seq.tag().name());
  }
  if (!(delta > 0.0)) throw LatticeError(ErrorCode::InvalidArgument, "delta must be > 0");
  TailReport r = start_report("in_measure", seq, ts);
  for (std::size_t n = 1; n <= seq.length(); ++n) {
    const StepFunction f = seq.at(n).as<StepFunction>();
    double mass = 0.0;
    for (std::size_t j = 0; j < f.values().size(); ++j) {
      if (std::abs(f.values()[j]) > delta) mass += f.cell_weight(j);
    }
    r.values.push_back(mass);
  }
  finalize(r);
  return r;
}

namespace {

TailReport pointwise_atomic(const VectorSequence& seq, TailReport r) {
  const std::size_t N = seq.length();
  const std::size_t W = r.window;
  const std::size_t half = N / 2;  // limits taken over n > half
  const std::size_t half_len = N - half;
  struct Track {
    std::size_t first = 0;
    double sup = 0.0;
    double inf = 0.0;
    std::size_t seen_late = 0;
  };
  std::map<std::size_t, Track> coords;
  for (std::size_t n = 1; n <= N; ++n) {
    const LatticeVector x = seq.at(n).as<LatticeVector>();
    double v = 0.0;
    for (const auto& [c, val] : x.entries()) {
      auto [it, fresh] = coords.try_emplace(c, Track{n, 0.0, 0.0, 0});
      Track& t = it->second;
      if (!fresh && t.first + W <= n) v = std::max(v, std::abs(val));
      if (n > half) {
        const double a = std::abs(val);
        t.inf = t.seen_late == 0 ? a : std::min(t.inf, a);
        t.sup = std::max(t.sup, a);
        ++t.seen_late;
      }
    }
    r.values.push_back(v);
  }
  for (const auto& [c, t] : coords) {
    r.cell_limits.push_back({c, t.sup, t.seen_late == half_len ? t.inf : 0.0});
  }
  return r;
}

TailReport pointwise_step(const VectorSequence& seq, const ToleranceSpec& ts, TailReport r) {
  const std::size_t N = seq.length();
  const std::size_t W = r.window;
  int level = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    level = std::max(level, seq.at(n).as<StepFunction>().level());
    if (level > ts.max_level) {
      throw LatticeError(ErrorCode::RefinementOverflow, "common refinement level " + std::to_string(level) +
                                                            " exceeds max level " + std::to_string(ts.max_level));
    }
  }
  r.refinement_level = level;
  const std::size_t cells = std::size_t{1} << level;
  const MeasureModel& mu = seq.tag().measure();
  std::vector<double> weight(cells);
  for (std::size_t j = 0; j < cells; ++j) weight[j] = mu.cell_weight(j, level);

  const std::size_t half = N / 2;
  std::vector<std::size_t> last_hit(cells, 0);  // 0 = never
  std::vector<double> sup(cells, 0.0), inf(cells, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    const StepFunction f = seq.at(n).as<StepFunction>();
    const int shift = level - f.level();
    double mass = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      const double a = std::abs(f.values()[j >> shift]);
      if (a >= r.tol) last_hit[j] = n;
      if (last_hit[j] != 0 && last_hit[j] + W > n) mass += weight[j];
      if (n > half) {
        sup[j] = std::max(sup[j], a);
        inf[j] = (n == half + 1) ? a : std::min(inf[j], a);
      }
    }
    r.values.push_back(mass);
  }
  r.cell_limits.reserve(cells);
  for (std::size_t j = 0; j < cells; ++j) r.cell_limits.push_back({j, sup[j], inf[j]});
  return r;
}

}  // namespace

TailReport pointwise_tail(const VectorSequence& seq, const ToleranceSpec& ts) {
  TailReport r = start_report("pointwise", seq, ts);
  if (seq.tag().is_sequence()) {
    r = pointwise_atomic(seq, std::move(r));
  } else if (seq.tag().is_step()) {
    r = pointwise_step(seq, ts, std::move(r));
  } else {
    throw LatticeError(ErrorCode::InvalidArgument, "pointwise diagnostic supports sequence and step tags only");
  }
  finalize(r);
  return r;
}

TailReport weak_tail(const VectorSequence& seq, const std::vector<Element>& functionals, bool modulus,
                     const ToleranceSpec& ts) {
  require_tests(seq.tag(), functionals, "functional");
  TailReport r = start_report(modulus ? "modulus_weak" : "weak", seq, ts);
  r.family = std::to_string(functionals.size()) + " functionals";
  r.against_family = true;
  std::vector<Element> moduli;
  if (modulus) {
    for (const auto& f : functionals) moduli.push_back(abs(f));
  }
  std::vector<std::size_t> probes;
  for (std::size_t n = 1; n <= seq.length(); ++n) {
    const Element x = modulus ? abs(seq.at(n)) : seq.at(n);
    const auto& family = modulus ? moduli : functionals;
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const double v = std::abs(pairing(family[i], x));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    r.values.push_back(best);
    probes.push_back(arg);
  }
  finalize(r, &probes);
  return r;
}

OrderWitness order_witness_atomic(const VectorSequence& seq, const Element& bound, std::size_t schedule_length) {
  if (!seq.tag().is_sequence()) {
    throw LatticeError(ErrorCode::InvalidArgument, "order witness needs an atomic sequence model");
  }
  require_same_tag(zero(seq.tag()), bound);
  if (!is_positive(bound)) throw LatticeError(ErrorCode::NegativeInput, "bound must be >= 0");

  std::vector<Element> moduli;
  moduli.reserve(seq.length());
  for (std::size_t n = 1; n <= seq.length(); ++n) {
    moduli.push_back(abs(seq.at(n)));
    if (!leq(moduli.back(), bound)) {
      throw LatticeError(ErrorCode::NotOrderBounded, "|x_" + std::to_string(n) + "| exceeds the bound");
    }
  }

  const auto atoms = bound.as<LatticeVector>().entries();
  const std::size_t K = schedule_length != 0 ? schedule_length : std::max<std::size_t>(1, atoms.size());
  OrderWitness out;
  for (std::size_t k = 1; k <= K; ++k) {
    const double cap = 1.0 / static_cast<double>(k);
    std::vector<LatticeVector::Entry> v;
    v.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      v.emplace_back(atoms[i].first, i < k ? std::min(cap, atoms[i].second) : atoms[i].second);
    }
    Element vk = LatticeVector(seq.tag(), std::move(v));
    std::size_t last_bad = 0;
    for (std::size_t n = seq.length(); n >= 1; --n) {
      if (!leq(moduli[n - 1], vk)) {
        last_bad = n;
        break;
      }
    }
    if (last_bad == seq.length()) {
      throw LatticeError(ErrorCode::NoIndexFound,
                         "no n_" + std::to_string(k) + " within horizon " + std::to_string(seq.length()));
    }
    out.dominator_norms.push_back(norm(vk));
    out.dominators.push_back(std::move(vk));
    out.indices.push_back(last_bad + 1);
  }
  return out;
}

AlmostOrderBoundedResult almost_order_bounded_check(const std::vector<Element>& vectors, const Element& u, double eps) {
  if (!(eps > 0.0)) throw LatticeError(ErrorCode::InvalidArgument, "eps must be > 0");
  AlmostOrderBoundedResult res;
  res.passed = true;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double v = norm(pos_part(abs(vectors[i]) - u));
    if (i == 0 || v > res.worst_value) {
      res.worst = i;
      res.worst_value = v;
    }
    if (!(v < eps)) res.passed = false;
  }
  return res;
}

}  // namespace unlat
