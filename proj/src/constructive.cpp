#include "unlat/constructive.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <type_traits>

namespace unlat {

RieszWitness riesz_decompose(const Element& x, const Element& u, const Element& v, double tol) {
  require_same_tag(x, u);
  require_same_tag(x, v);
  if (!is_positive(u) || !is_positive(v)) throw LatticeError(ErrorCode::NegativeInput, "u and v must be >= 0");
  const Element mod = abs(x);
  const double gap = norm(mod - (u + v));
  if (gap > tol * norm(x)) {
    throw LatticeError(ErrorCode::NotADecomposition, "|| |x| - (u+v) || = " + std::to_string(gap));
  }
  const Element xp = pos_part(x);
  const Element xn = neg_part(x);
  Element a = meet(xp, u);
  Element b = u - a;
  Element c = xp - a;
  Element d = xn - b;
  const double floor = -tol * max_abs_diff(x, zero(x.tag()));
  for (const Element* part : {&a, &b, &c, &d}) {
    const double dip = max_abs_diff(*part, pos_part(*part));
    if (-dip < floor) throw LatticeError(ErrorCode::NegativePart, "Riesz part below -tol");
  }
  Element y = a - b;
  Element z = c - d;
  return RieszWitness{std::move(y), std::move(z), std::move(a), std::move(b), std::move(c), std::move(d)};
}

std::vector<std::pair<std::string, double>> riesz_identity_errors(const RieszWitness& w, const Element& x,
                                                                  const Element& u, const Element& v) {
  const double scale = std::max(norm(x), std::numeric_limits<double>::min());
  auto err = [scale](const Element& lhs, const Element& rhs) { return norm(lhs - rhs) / scale; };
  return {
      {"x=y+z", err(x, w.y + w.z)},
      {"|y|=u", err(abs(w.y), u)},
      {"|z|=v", err(abs(w.z), v)},
      {"u=a+b", err(u, w.a + w.b)},
      {"v=c+d", err(v, w.c + w.d)},
      {"x+=a+c", err(pos_part(x), w.a + w.c)},
      {"x-=b+d", err(neg_part(x), w.b + w.d)},
      {"a^b=0", norm(meet(w.a, w.b)) / scale},
      {"c^d=0", norm(meet(w.c, w.d)) / scale},
  };
}

HorizonExhausted::HorizonExhausted(std::size_t k, double bound, DisjointificationResult partial)
    : LatticeError(ErrorCode::HorizonExhausted,
                   "no admissible index for step " + std::to_string(k) + " (meet bound " + std::to_string(bound) + ")"),
      k_(k),
      bound_(bound),
      partial_(std::move(partial)) {}

namespace {

double pow2(long e) { return std::ldexp(1.0, static_cast<int>(std::clamp<long>(e, -2000, 2000))); }

// Builds v_k, d_k and the certificates from already selected positive terms.
DisjointificationResult assemble_positive(const std::vector<std::size_t>& indices, const std::vector<Element>& terms,
                                          double disjoint_tol) {
  const std::size_t K = indices.size();
  DisjointificationResult r;
  r.selected_indices = indices;
  r.disjoint_tol = disjoint_tol;
  r.meet_matrix.assign(K, std::vector<double>(K, 0.0));

  std::vector<std::vector<std::optional<Element>>> z(K, std::vector<std::optional<Element>>(K));
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t k = i + 1; k < K; ++k) {
      z[i][k] = meet(terms[i], terms[k]);
      r.meet_matrix[i][k] = norm(*z[i][k]);
    }
  }
  r.meets_bounded = true;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t k = i + 1; k < K; ++k) {
      // 1-based: ||z_ik|| <= 2^-(i+k)
      if (r.meet_matrix[i][k] > pow2(-static_cast<long>(i + 1 + k + 1))) r.meets_bounded = false;
    }
  }

  r.residuals_bounded = true;
  for (std::size_t k = 0; k < K; ++k) {
    Element v = zero(terms[k].tag());
    for (std::size_t i = 0; i < k; ++i) v = v + *z[i][k];
    for (std::size_t j = k + 1; j < K; ++j) v = v + *z[k][j];
    Element d = pos_part(terms[k] - v);
    r.perturbation_norms.push_back(norm(v));
    r.residual_norms.push_back(norm(terms[k] - d));
    if (!(r.residual_norms.back() < pow2(-static_cast<long>(k + 1)))) r.residuals_bounded = false;
    r.disjoint_parts.push_back(std::move(d));
  }

  r.disjoint_verified = true;
  for (std::size_t k = 0; k < K && r.disjoint_verified; ++k) {
    for (std::size_t m = k + 1; m < K; ++m) {
      if (!is_disjoint(r.disjoint_parts[k], r.disjoint_parts[m], disjoint_tol)) {
        r.disjoint_verified = false;
        break;
      }
    }
  }
  return r;
}

void check_precondition(const VectorSequence& seq, const ToleranceSpec& ts, const KpOptions& opts,
                        DisjointificationResult& r) {
  const TailReport un = un_tail_qip(seq, zero(seq.tag()), ts);
  r.precondition_met = un.verdict == Verdict::Null;
  if (r.precondition_met) {
    r.precondition_note = "un-null against the quasi-interior point";
    return;
  }
  r.precondition_note = "advisory: sequence is not un-null at tol " + std::to_string(ts.tol) + " (witness n = " +
                        std::to_string(un.witness ? un.witness->index : 0) + ")";
  if (opts.mode == PreconditionMode::Strict) throw LatticeError(ErrorCode::NotUnNull, r.precondition_note);
}

}  // namespace

DisjointificationResult kp_disjointify_positive(const VectorSequence& seq, std::size_t target_count,
                                                const ToleranceSpec& ts, const KpOptions& opts) {
  if (target_count == 0) throw LatticeError(ErrorCode::InvalidArgument, "target count must be >= 1");
  for (std::size_t n = 1; n <= seq.length(); ++n) {
    if (!is_positive(seq.at(n))) {
      throw LatticeError(ErrorCode::NegativeInput, "term " + std::to_string(n) + " is not positive");
    }
  }
  DisjointificationResult pre;
  check_precondition(seq, ts, opts, pre);

  std::vector<std::size_t> indices{1};
  std::vector<Element> terms{seq.at(1)};
  std::size_t n = 1;
  for (std::size_t k = 2; k <= target_count; ++k) {
    bool found = false;
    while (!found && ++n <= seq.length()) {
      Element x = seq.at(n);
      bool ok = true;
      for (std::size_t i = 0; i < terms.size() && ok; ++i) {
        ok = norm(meet(x, terms[i])) <= pow2(-static_cast<long>(k + i + 1));
      }
      if (ok) {
        indices.push_back(n);
        terms.push_back(std::move(x));
        found = true;
      }
    }
    if (!found) {
      DisjointificationResult partial = assemble_positive(indices, terms, opts.disjoint_tol);
      partial.precondition_met = pre.precondition_met;
      partial.precondition_note = pre.precondition_note;
      throw HorizonExhausted(k, pow2(-static_cast<long>(k + 1)), std::move(partial));
    }
  }
  DisjointificationResult r = assemble_positive(indices, terms, opts.disjoint_tol);
  r.precondition_met = pre.precondition_met;
  r.precondition_note = pre.precondition_note;
  return r;
}

namespace {

DisjointificationResult sign_parts(const VectorSequence& seq, DisjointificationResult pos) {
  DisjointificationResult r = std::move(pos);
  r.residuals_bounded = true;
  r.residual_norms.clear();
  for (std::size_t k = 0; k < r.selected_indices.size(); ++k) {
    const Element x = seq.at(r.selected_indices[k]);
    const Element w = r.disjoint_parts[k];
    const Element h = abs(x) - w;
    RieszWitness split = riesz_decompose(x, w, h);
    r.residual_norms.push_back(norm(x - split.y));
    if (!(r.residual_norms.back() < pow2(-static_cast<long>(k + 1)))) r.residuals_bounded = false;
    r.disjoint_parts[k] = std::move(split.y);
  }
  r.disjoint_verified = true;
  for (std::size_t k = 0; k < r.disjoint_parts.size() && r.disjoint_verified; ++k) {
    for (std::size_t m = k + 1; m < r.disjoint_parts.size(); ++m) {
      if (!is_disjoint(r.disjoint_parts[k], r.disjoint_parts[m], r.disjoint_tol)) {
        r.disjoint_verified = false;
        break;
      }
    }
  }
  return r;
}

}  // namespace

DisjointificationResult kp_disjointify(const VectorSequence& seq, std::size_t target_count, const ToleranceSpec& ts,
                                       const KpOptions& opts) {
  try {
    return sign_parts(seq, kp_disjointify_positive(seq.modulus(), target_count, ts, opts));
  } catch (const HorizonExhausted& e) {
    throw HorizonExhausted(e.step(), e.bound(), sign_parts(seq, e.partial()));
  }
}

Element restrict_to_support(const Element& x, const Element& e) {
  require_same_tag(x, e);
  return std::visit(
      [&](const auto& xv) -> Element {
        using T = std::decay_t<decltype(xv)>;
        const T& ev = e.as<T>();
        if constexpr (std::is_same_v<T, LatticeVector>) {
          std::vector<LatticeVector::Entry> out;
          for (const auto& [i, v] : xv.entries()) {
            if (ev.at(i) != 0.0) out.emplace_back(i, v);
          }
          return LatticeVector(xv.tag(), std::move(out));
        } else if constexpr (std::is_same_v<T, StepFunction>) {
          const int level = std::max(xv.level(), ev.level());
          StepFunction xr = xv.refined(level);
          StepFunction er = ev.refined(level);
          std::vector<double> out(xr.values().begin(), xr.values().end());
          for (std::size_t j = 0; j < out.size(); ++j) {
            if (er.values()[j] == 0.0) out[j] = 0.0;
          }
          return StepFunction(xv.tag(), level, std::move(out));
        } else {
          return DirectSumVector(restrict_to_support(Element(xv.left()), Element(ev.left())).template as<LatticeVector>(),
                                 restrict_to_support(Element(xv.right()), Element(ev.right())).template as<LatticeVector>());
        }
      },
      x.variant());
}

namespace {

std::vector<std::size_t> greedy_select(const VectorSequence& seq, const std::function<double(const Element&)>& score,
                                       std::vector<double>& scores) {
  std::vector<std::size_t> picked;
  std::size_t n = 0;
  for (std::size_t k = 1;; ++k) {
    const double bound = pow2(-static_cast<long>(k));
    bool found = false;
    while (!found && ++n <= seq.length()) {
      const double s = score(seq.at(n));
      if (s <= bound) {
        picked.push_back(n);
        scores.push_back(s);
        found = true;
      }
    }
    if (!found) break;
  }
  return picked;
}

void require_count(std::size_t got, std::optional<std::size_t> target) {
  const std::size_t need = target.value_or(1);
  if (got < need) {
    throw LatticeError(ErrorCode::SelectionStalled,
                       "no admissible n_" + std::to_string(got + 1) + " within the horizon");
  }
}

}  // namespace

UoExtraction uo_extract(const VectorSequence& seq, const ToleranceSpec& ts, std::optional<std::size_t> target_count) {
  Element e = zero(seq.tag());
  bool any = false;
  for (std::size_t n = 1; n <= seq.length(); ++n) {
    const Element x = seq.at(n);
    const double nx = norm(x);
    if (nx == 0.0) continue;
    any = true;
    const double w = pow2(-static_cast<long>(n)) / nx;
    if (w == 0.0 || !std::isfinite(w)) continue;
    e = e + w * abs(x);
  }

  UoExtraction out{e, {}, {}, {}};
  if (!any) {
    for (std::size_t n = 1; n <= seq.length(); ++n) {
      out.subindices.push_back(n);
      out.meet_norms.push_back(0.0);
    }
  } else {
    out.subindices = greedy_select(
        seq, [&e](const Element& x) { return norm(meet(abs(x), e)); }, out.meet_norms);
  }
  require_count(out.subindices.size(), target_count);

  const VectorSequence sub = seq.subsequence(out.subindices);
  const VectorSequence restricted(sub.tag(), sub.length(),
                                  [sub, e](std::size_t k) { return restrict_to_support(sub.at(k), e); },
                                  seq.name() + "[uo]");
  ToleranceSpec rts = ts;
  if (ts.window != 0) rts.window = std::min(ts.window, restricted.length());
  out.report = pointwise_tail(restricted, rts);
  return out;
}

OrderSubsequence norm_to_order_subsequence(const VectorSequence& seq, std::optional<std::size_t> target_count) {
  OrderSubsequence out;
  out.subindices = greedy_select(
      seq, [](const Element& x) { return norm(x); }, out.term_norms);
  require_count(out.subindices.size(), target_count);

  const std::size_t K = out.subindices.size();
  std::vector<Element> moduli;
  moduli.reserve(K);
  for (std::size_t idx : out.subindices) moduli.push_back(abs(seq.at(idx)));
  std::vector<Element> tails(K, zero(seq.tag()));
  Element acc = zero(seq.tag());
  for (std::size_t m = K; m-- > 0;) {
    acc = moduli[m] + acc;
    tails[m] = acc;
  }
  out.certified = true;
  for (std::size_t m = 0; m < K; ++m) {
    out.certificate_norms.push_back(norm(tails[m]));
    if (out.certificate_norms.back() > pow2(-static_cast<long>(m))) out.certified = false;
    for (std::size_t k = m; k < K && out.certified; ++k) {
      if (!leq(moduli[k], tails[m])) out.certified = false;
    }
  }
  return out;
}

}  // namespace unlat
