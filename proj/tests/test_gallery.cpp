#include <doctest.h>

#include <cmath>

#include "unlat/constructive.hpp"
#include "unlat/gallery.hpp"

using namespace unlat;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const LatticeError& e) {
    return e.code();
  }
  FAIL("no LatticeError thrown");
  return ErrorCode::ValidationError;
}

}  // namespace

TEST_CASE("verdict table regression") {
  for (const auto& entry : gallery()) {
    CAPTURE(entry.name);
    CHECK_FALSE(entry.expected.empty());
    for (const auto& ex : entry.expected) {
      CAPTURE(ex.label);
      CHECK(evaluate(entry.sequence, ex.diagnostic, entry.tolerance).verdict == ex.verdict);
    }
  }
  CHECK(gallery_names().size() == gallery().size());
  CHECK(code_of([] { gallery_entry("nope"); }) == ErrorCode::ValidationError);
}

TEST_CASE("generators") {
  const VectorSequence u = std_units(SpaceTag::c0(), 5);
  CHECK(u.at(3) == Element(LatticeVector::unit(SpaceTag::c0(), 3)));
  CHECK(code_of([] { std_units(SpaceTag::lp_step(1.0), 3); }) == ErrorCode::InvalidArgument);

  const VectorSequence tw = typewriter(3);
  CHECK(tw.length() == 15);
  // n = 2^k + j is the indicator of cell j at level k
  for (std::size_t n = 1; n <= 15; ++n) {
    const int k = static_cast<int>(std::log2(static_cast<double>(n)));
    const StepFunction f = tw.at(n).as<StepFunction>();
    CHECK(norm(f) == std::ldexp(1.0, -k));
    const std::size_t j = n - (std::size_t{1} << k);
    CHECK(f == StepFunction::indicator(SpaceTag::lp_step(1.0), k, j));
  }
  CHECK(code_of([] { typewriter(0); }) == ErrorCode::InvalidArgument);

  const StepFunction x = rademacher_envelope();
  const VectorSequence r = rademacher_modulated(x, 12);
  for (std::size_t n = 1; n <= 12; ++n) CHECK(abs(r.at(n)) == Element(x));
  CHECK(code_of([&] { rademacher_modulated(x, 21); }) == ErrorCode::RefinementOverflow);
  CHECK(code_of([&] { rademacher_modulated(StepFunction(x.tag(), 0, {-1.0}), 4); }) == ErrorCode::NegativeInput);

  const VectorSequence ov = overlap_seq(SpaceTag::c0(), 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t m = n + 1; m <= 12; ++m) {
      CHECK(norm(meet(ov.at(n), ov.at(m))) == std::ldexp(1.0, -static_cast<int>(m)));
    }
  }
}

TEST_CASE("direct sum witness meets each term in its linf part") {
  const VectorSequence s = direct_sum_seq(32);
  const Element u = direct_sum_witness(32);
  for (std::size_t n = 1; n <= 32; ++n) {
    const Element m = meet(s.at(n), u);
    CHECK(m == Element(DirectSumVector(LatticeVector(SpaceTag::lp(1.0)), LatticeVector::unit(SpaceTag::linf(), n))));
    CHECK(norm(m) == 1.0);
  }
}

TEST_CASE("atomic models: pointwise verdict equals un verdict") {
  for (const auto& entry : gallery()) {
    if (!entry.sequence.tag().is_sequence()) continue;
    const SpaceKind k = entry.sequence.tag().kind();
    if (k != SpaceKind::Lp && k != SpaceKind::C0) continue;
    CAPTURE(entry.name);
    const TailReport un = un_tail_qip(entry.sequence, zero(entry.sequence.tag()), entry.tolerance);
    const TailReport pw = pointwise_tail(entry.sequence, entry.tolerance);
    CHECK(un.verdict == pw.verdict);
  }
  const GalleryEntry tw = gallery_entry("typewriter");
  CHECK(un_tail_qip(tw.sequence, zero(tw.sequence.tag()), tw.tolerance).verdict == Verdict::Null);
  CHECK(pointwise_tail(tw.sequence, tw.tolerance).verdict == Verdict::NotNull);
}

TEST_CASE("weakly null on lp implies un-null; Rademacher separates them in L2") {
  int seen = 0;
  for (const auto& entry : gallery()) {
    if (entry.sequence.tag().kind() != SpaceKind::Lp) continue;
    for (const auto& ex : entry.expected) {
      if (ex.diagnostic.kind != DiagnosticKind::Weak) continue;
      if (evaluate(entry.sequence, ex.diagnostic, entry.tolerance).verdict != Verdict::Null) continue;
      CAPTURE(entry.name);
      ++seen;
      CHECK(un_tail_qip(entry.sequence, zero(entry.sequence.tag()), entry.tolerance).verdict == Verdict::Null);
    }
  }
  CHECK(seen >= 1);

  const GalleryEntry rd = gallery_entry("rademacher");
  CHECK(weak_tail(rd.sequence, rademacher_functionals(), false, rd.tolerance).verdict == Verdict::Null);
  const TailReport un = un_tail(rd.sequence, zero(rd.sequence.tag()), {rademacher_envelope()}, rd.tolerance);
  CHECK(un.verdict == Verdict::NotNull);
  for (double v : un.values) CHECK(v == doctest::Approx(norm(rademacher_envelope())).epsilon(1e-15));
}

TEST_CASE("overlap sequence drives a nontrivial disjointification") {
  const DisjointificationResult r = kp_disjointify_positive(overlap_seq(SpaceTag::lp(2.0), 256), 8);
  CHECK(r.verified());
  CHECK(r.selected_indices.back() > 8);
}
