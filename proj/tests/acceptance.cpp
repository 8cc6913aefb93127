// Acceptance checks: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "unlat/constructive.hpp"
#include "unlat/convergence.hpp"
#include "unlat/diagnostic.hpp"
#include "unlat/gallery.hpp"
#include "unlat/topology.hpp"

using namespace unlat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome kp_overlap() {
  Outcome o;
  const auto t0 = Clock::now();
  const VectorSequence seq = overlap_seq(SpaceTag::lp(2.0), 4096);
  const std::size_t K = 8;
  const DisjointificationResult r = kp_disjointify(seq, K);
  const double elapsed = seconds_since(t0);
  o.require(r.selected_indices.size() == K && r.disjoint_parts.size() == K, "wrong number of parts");
  double scale = 0.0;
  for (std::size_t n : r.selected_indices) {
    const Element x = seq.at(n);
    scale = std::max(scale, norm(x));
  }
  double worst_meet = 0.0;
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t k = i + 1; k < K; ++k)
      worst_meet = std::max(worst_meet, norm(meet(abs(r.disjoint_parts[i]), abs(r.disjoint_parts[k]))));
  o.require(worst_meet <= 1e-12 * scale, fmt("meet norm %.3g", worst_meet));
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const Element x = seq.at(r.selected_indices[k - 1]);
    const double res = norm(x - r.disjoint_parts[k - 1]);
    const double bound = std::ldexp(1.0, -static_cast<int>(k));
    o.require(res < bound, fmt("residual %zu is %.3g", k, res));
    worst_ratio = std::max(worst_ratio, res / bound);
  }
  o.require(elapsed < 5.0, fmt("took %.2f s", elapsed));
  if (o.pass)
    o.detail = fmt("K=8 alpha_8=%zu max meet %.1e max residual/2^-k %.3f in %.2f s", r.selected_indices.back(), worst_meet,
                   worst_ratio, elapsed);
  return o;
}

Outcome riesz_triples() {
  Outcome o;
  unlat::testing::Gen g(2024);
  const auto tags = unlat::testing::all_tags();
  std::size_t triples = 0, failures = 0;
  double worst = 0.0;
  for (const SpaceTag& t : tags) {
    for (int i = 0; i < 10000; ++i) {
      const Element x = g.element(t);
      const Element mod = abs(x);
      const Element u = meet(mod, abs(g.element(t)));
      const Element v = mod - u;
      ++triples;
      try {
        const RieszWitness w = riesz_decompose(x, u, v);
        bool ok = true;
        for (const auto& [name, err] : riesz_identity_errors(w, x, u, v)) {
          worst = std::max(worst, err);
          ok = ok && err <= 1e-12;
        }
        if (!ok) ++failures;
      } catch (const LatticeError&) {
        ++failures;
      }
    }
  }
  o.require(failures == 0, fmt("%zu of %zu triples failed", failures, triples));
  if (o.pass) o.detail = fmt("%zu triples over %zu tags, worst identity error %.1e", triples, tags.size(), worst);
  return o;
}

Outcome typewriter_dichotomy() {
  Outcome o;
  const auto t0 = Clock::now();
  const VectorSequence tw = typewriter(10);
  ToleranceSpec ts;
  ts.tol = 1e-2;
  ts.window = 256;
  const TailReport m = in_measure_tail(tw, 0.5, ts);
  for (std::size_t n = 1; n <= tw.length(); ++n) {
    const int k = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    if (m.values[n - 1] != std::ldexp(1.0, -k)) {
      o.require(false, fmt("in-measure value at n=%zu", n));
      break;
    }
  }
  o.require(m.verdict == Verdict::Null, "in-measure verdict");
  const TailReport p = pointwise_tail(tw, ts);
  o.require(p.cell_limits.size() == 1024, fmt("%zu cells", p.cell_limits.size()));
  for (const CellLimit& c : p.cell_limits) {
    if (c.limsup != 1.0 || c.liminf != 0.0) {
      o.require(false, fmt("cell %zu limits %g/%g", c.cell, c.limsup, c.liminf));
      break;
    }
  }
  o.require(p.verdict == Verdict::NotNull, "pointwise verdict");
  const TailReport u = un_tail_qip(tw, zero(tw.tag()), ts);
  o.require(u.verdict == Verdict::Null, "un_qip verdict");
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 10.0, fmt("took %.2f s", elapsed));
  if (o.pass) o.detail = fmt("%zu terms, 1024 level-10 cells with limsup 1 liminf 0, %.2f s", tw.length(), elapsed);
  return o;
}

Outcome gallery_table() {
  Outcome o;
  std::size_t checks = 0;
  for (const GalleryEntry& entry : gallery()) {
    for (const Expectation& ex : entry.expected) {
      ++checks;
      const TailReport r = evaluate(entry.sequence, ex.diagnostic, entry.tolerance);
      o.require(r.verdict == ex.verdict, entry.name + " / " + ex.label);
    }
  }

  const GalleryEntry ds = gallery_entry("direct_sum");
  const TailReport against = un_tail(ds.sequence, zero(ds.sequence.tag()), {direct_sum_witness(ds.sequence.length())});
  for (double v : against.values) o.require(v == 1.0, "direct sum value against 0+1");
  o.require(against.verdict == Verdict::NotNull, "direct sum verdict against 0+1");

  const GalleryEntry rad = gallery_entry("rademacher");
  const StepFunction x = rademacher_envelope();
  const auto fs = rademacher_functionals();
  int l0 = 0;
  for (const Element& f : fs) l0 = std::max(l0, f.as<StepFunction>().level());
  const TailReport w = weak_tail(rad.sequence, fs, false);
  const std::size_t cut = static_cast<std::size_t>(l0 + x.level());
  for (std::size_t n = cut + 1; n <= rad.sequence.length(); ++n)
    o.require(w.values[n - 1] == 0.0, fmt("rademacher pairing at n=%zu", n));
  const TailReport un = un_tail(rad.sequence, zero(x.tag()), {Element(x)});
  const double nx = norm(Element(x));
  for (double v : un.values) o.require(v == nx, "rademacher un value");
  o.require(un.verdict == Verdict::NotNull, "rademacher un verdict");
  if (o.pass)
    o.detail = fmt("%zu verdicts, 0+1 values all 1.0, pairings 0 for n > %zu, un values all %.17g", checks, cut, nx);
  return o;
}

Outcome axioms() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t tags = 0, samples = 0;
  for (const SpaceTag& t : unlat::testing::all_tags()) {
    if (!axiom_suite_supports(t)) continue;
    ++tags;
    for (const AxiomReport& r : axiom_suite(t, 10000, 0x5eed)) {
      samples += r.samples;
      o.require(r.samples >= 10000 && r.failures == 0, t.name() + " " + r.axiom + fmt(" failures %zu", r.failures));
    }
  }
  unlat::testing::Gen g(99);
  std::size_t separation = 0;
  const auto all = unlat::testing::all_tags();
  while (separation < 1000) {
    const Element x = g.element(all[separation % all.size()]);
    if (is_zero(x)) continue;
    ++separation;
    o.require(!contains(Neighborhood(abs(x), norm(x)), x), "x in V_{|x|,||x||}");
  }
  if (o.pass)
    o.detail = fmt("%zu tags, %zu axiom samples, %zu separation checks, %.1f s", tags, samples, separation, seconds_since(t0));
  return o;
}

// Random step sequences: decaying amplitude, shrinking support, or a steady
// block of measure >= 1/16 with |value| >= 0.5.
VectorSequence random_step_sequence(const SpaceTag& tag, int cls, std::uint64_t seed) {
  const std::size_t length = 64;
  return VectorSequence(tag, length, [tag, cls, seed](std::size_t n) -> Element {
    std::mt19937_64 rng(seed * 1000003u + n);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    auto random_step = [&](int level) {
      std::vector<double> v(std::size_t{1} << level);
      for (double& c : v) c = (rng() & 1) ? val(rng) : 0.0;
      return StepFunction(tag, level, std::move(v));
    };
    const int level = static_cast<int>(rng() % 4) + 2;
    switch (cls) {
      case 0: return std::ldexp(1.0, -static_cast<int>(n) / 4) * Element(random_step(level));
      case 1: {
        const int l = std::min(2 + static_cast<int>(n) / 3, 16);
        const std::size_t cell = rng() % (std::size_t{1} << l);
        return val(rng) * Element(StepFunction::indicator(tag, l, cell));
      }
      default: {
        const StepFunction f = random_step(level + 1);
        std::vector<double> v(f.values().begin(), f.values().end());
        const std::size_t block = v.size() / 8;
        const std::size_t start = (rng() % 8) * block;
        const double a = std::uniform_real_distribution<double>(0.5, 3.0)(rng) * ((rng() & 1) ? 1.0 : -1.0);
        for (std::size_t c = start; c < start + block; ++c) v[c] = a;
        return StepFunction(tag, level + 1, std::move(v));
      }
    }
  });
}

Outcome un_vs_measure() {
  Outcome o;
  const double tol = 1e-2;
  const double delta = std::sqrt(tol);
  std::size_t compared = 0, disagreements = 0, nulls = 0;
  auto compare = [&](const VectorSequence& seq, std::size_t window, const std::string& what) {
    ToleranceSpec ts;
    ts.tol = tol;
    ts.window = window;
    const Verdict a = un_tail_qip(seq, zero(seq.tag()), ts).verdict;
    const Verdict b = in_measure_tail(seq, delta, ts).verdict;
    ++compared;
    if (a == Verdict::Null) ++nulls;
    if (a != b) {
      ++disagreements;
      o.require(false, "disagreement on " + what);
    }
  };
  for (const GalleryEntry& entry : gallery())
    if (entry.sequence.tag().is_step()) compare(entry.sequence, entry.tolerance.window, entry.name);
  const std::vector<SpaceTag> tags = {SpaceTag::lp_step(1.0), SpaceTag::lp_step(2.0),
                                      SpaceTag::lp_step(1.0, MeasureModel(2, {0.5, 0.125, 0.25, 0.125}))};
  for (int i = 0; i < 100; ++i)
    compare(random_step_sequence(tags[(i / 3) % 3], i % 3, 7000 + i), 0, fmt("random sequence %d", i));
  if (o.pass)
    o.detail = fmt("delta=%.2g tol=%.0e: %zu sequences (%zu NULL), %zu disagreements", delta, tol, compared, nulls,
                   disagreements);
  return o;
}

// Un-null l2 sequences: sliding bumps, geometric decay on a fixed support,
// decaying sliding bumps, and sums of the last two.
VectorSequence random_l2_sequence(int cls, std::uint64_t seed) {
  const SpaceTag l2 = SpaceTag::lp(2.0);
  std::mt19937_64 base(seed);
  std::vector<double> g(16);
  for (double& v : g) v = std::uniform_real_distribution<double>(-3.0, 3.0)(base);
  const std::size_t width = 1 + base() % 8;
  return VectorSequence(l2, 1024, [l2, cls, seed, g, width](std::size_t n) -> Element {
    std::mt19937_64 rng(seed * 7919u + n);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto bump = [&](double scale) {
      std::vector<LatticeVector::Entry> e;
      const std::size_t s = n + rng() % 4;
      for (std::size_t c = s; c < s + width; ++c) e.emplace_back(c, scale * (1.25 + 0.75 * unit(rng)));
      return Element(LatticeVector(l2, std::move(e)));
    };
    auto decay = [&] {
      std::vector<LatticeVector::Entry> e;
      const double r = std::exp2(-static_cast<double>(n) / 16.0);
      for (std::size_t i = 0; i < g.size(); ++i) e.emplace_back(i + 1, r * unit(rng) * g[i]);
      return Element(LatticeVector(l2, std::move(e)));
    };
    const double fade = std::exp2(-static_cast<double>(n) / 32.0);
    switch (cls) {
      case 0: return bump(1.0);
      case 1: return decay();
      case 2: return bump(fade);
      default: return bump(fade) + decay();
    }
  });
}

Outcome atomic_agreement() {
  Outcome o;
  std::size_t agree = 0, un_null = 0, norm_null = 0, witnesses = 0;
  for (int i = 0; i < 100; ++i) {
    const VectorSequence seq = random_l2_sequence(i % 4, 31337 + i);
    const Element z = zero(seq.tag());
    const Verdict u = un_tail_qip(seq, z).verdict;
    const Verdict p = pointwise_tail(seq).verdict;
    if (u == Verdict::Null) ++un_null;
    if (u == p) ++agree;
    o.require(u == p, fmt("sequence %d: un and pointwise differ", i));
    if (norm_tail(seq, z).verdict != Verdict::Null) continue;
    ++norm_null;
    Element bound = z;
    for (std::size_t n = 1; n <= seq.length(); ++n) bound = join(bound, abs(seq.at(n)));
    try {
      const OrderWitness w = order_witness_atomic(seq, bound);
      if (w.indices.size() == bound.as<LatticeVector>().support_size()) ++witnesses;
      else o.require(false, fmt("sequence %d: short schedule", i));
    } catch (const LatticeError& e) {
      o.require(false, fmt("sequence %d: ", i) + e.what());
    }
  }
  o.require(un_null == 100, fmt("only %zu sequences un-null", un_null));
  if (o.pass)
    o.detail = fmt("%zu/100 agree (all un-null), order witness on %zu/%zu norm-null cases", agree, witnesses, norm_null);
  return o;
}

Outcome uo_extraction() {
  Outcome o;
  const VectorSequence tw = typewriter(10);
  ToleranceSpec ts;
  ts.tol = 1e-2;
  ts.window = 2;
  const UoExtraction x = uo_extract(tw, ts);
  o.require(x.report.verdict == Verdict::Null, "subsequence pointwise report not NULL");
  o.require(!x.subindices.empty(), "empty selection");
  for (std::size_t k = 1; k <= x.subindices.size(); ++k) {
    const Element f = tw.at(x.subindices[k - 1]);
    const double m = norm(meet(abs(f), x.e));
    o.require(m <= std::ldexp(1.0, -static_cast<int>(k)), fmt("meet at k=%zu is %g", k, m));
    if (k > 1) o.require(x.subindices[k - 1] > x.subindices[k - 2], "indices not increasing");
  }
  if (o.pass) {
    std::string idx;
    for (std::size_t n : x.subindices) idx += (idx.empty() ? "" : ",") + std::to_string(n);
    o.detail = "n_k = " + idx + ", every ||f_{n_k} ^ e|| <= 2^-k";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"kp disjointification on overlap l2", kp_overlap},
      {"riesz decomposition identities", riesz_triples},
      {"typewriter dichotomy", typewriter_dichotomy},
      {"gallery verdict table", gallery_table},
      {"topology axiom suite", axioms},
      {"un versus in-measure", un_vs_measure},
      {"atomic pointwise and un agreement", atomic_agreement},
      {"uo extraction on the typewriter", uo_extraction},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu %-36s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
