#include "unlat/gallery.hpp"

#include <bit>
#include <cmath>

namespace unlat {

namespace {

void require_sequence_tag(const SpaceTag& tag) {
  if (!tag.is_sequence()) throw LatticeError(ErrorCode::InvalidArgument, "expected a sequence tag, got " + tag.name());
}

Element ones(const SpaceTag& tag, std::size_t n) {
  std::vector<LatticeVector::Entry> e;
  for (std::size_t i = 1; i <= n; ++i) e.emplace_back(i, 1.0);
  return LatticeVector(tag, std::move(e));
}

DiagnosticSpec diag(DiagnosticKind k) {
  DiagnosticSpec d;
  d.kind = k;
  return d;
}

DiagnosticSpec un_against(std::vector<Element> tests, std::string family) {
  DiagnosticSpec d = diag(DiagnosticKind::Un);
  d.tests = std::move(tests);
  d.family = std::move(family);
  return d;
}

DiagnosticSpec in_measure(double delta) {
  DiagnosticSpec d = diag(DiagnosticKind::InMeasure);
  d.delta = delta;
  return d;
}

DiagnosticSpec weak(std::vector<Element> fs, bool modulus) {
  DiagnosticSpec d = diag(DiagnosticKind::Weak);
  d.functionals = std::move(fs);
  d.modulus = modulus;
  return d;
}

constexpr std::size_t kUnitsHorizon = 256;
constexpr int kTypewriterLevel = 10;
constexpr std::size_t kRademacherHorizon = 16;
constexpr std::size_t kOverlapHorizon = 64;

GalleryEntry std_units_linf() {
  const SpaceTag t = SpaceTag::linf();
  return GalleryEntry{"std_units_linf",
                      std_units(t, kUnitsHorizon),
                      ToleranceSpec{},
                      {{"un against 1", un_against({ones(t, kUnitsHorizon)}, "constant one"), Verdict::NotNull},
                       {"un_qip", diag(DiagnosticKind::UnQip), Verdict::NotNull},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::NotNull},
                       {"pointwise", diag(DiagnosticKind::Pointwise), Verdict::Null}},
                      "unit vectors of linf: disjoint, coordinatewise null, not un-null"};
}

GalleryEntry std_units_c0() {
  const SpaceTag t = SpaceTag::c0();
  return GalleryEntry{"std_units_c0",
                      std_units(t, kUnitsHorizon),
                      ToleranceSpec{},
                      {{"un_qip", diag(DiagnosticKind::UnQip), Verdict::Null},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::NotNull},
                       {"pointwise", diag(DiagnosticKind::Pointwise), Verdict::Null}},
                      "unit vectors of c0: un-null, matching coordinatewise convergence"};
}

GalleryEntry std_units_l1() {
  const SpaceTag t = SpaceTag::lp(1.0);
  return GalleryEntry{"std_units_l1",
                      std_units(t, kUnitsHorizon),
                      ToleranceSpec{},
                      {{"un_qip", diag(DiagnosticKind::UnQip), Verdict::Null},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::NotNull},
                       {"pointwise", diag(DiagnosticKind::Pointwise), Verdict::Null},
                       {"weak against 1", weak({ones(t, kUnitsHorizon)}, false), Verdict::NotNull}},
                      "unit vectors of l1: un-null but neither norm nor weakly null"};
}

GalleryEntry std_units_l2() {
  const SpaceTag t = SpaceTag::lp(2.0);
  std::vector<Element> fs{quasi_interior_point(t, kUnitsHorizon)};
  for (std::size_t k = 1; k <= 16; ++k) fs.push_back(LatticeVector::unit(t, k));
  return GalleryEntry{"std_units_l2",
                      std_units(t, kUnitsHorizon),
                      ToleranceSpec{},
                      {{"un_qip", diag(DiagnosticKind::UnQip), Verdict::Null},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::NotNull},
                       {"pointwise", diag(DiagnosticKind::Pointwise), Verdict::Null},
                       {"weak", weak(fs, false), Verdict::Null}},
                      "unit vectors of l2: weakly null, hence un-null in an atomic order continuous lattice"};
}

GalleryEntry direct_sum() {
  const std::size_t n = kUnitsHorizon;
  Element left_q = DirectSumVector(quasi_interior_point(SpaceTag::lp(1.0), n).as<LatticeVector>(),
                                   LatticeVector(SpaceTag::linf()));
  return GalleryEntry{"direct_sum",
                      direct_sum_seq(n),
                      ToleranceSpec{},
                      {{"un within the l1 part", un_against({left_q}, "l1 part"), Verdict::Null},
                       {"un against 0+1", un_against({direct_sum_witness(n)}, "0 (+) 1"), Verdict::NotNull},
                       {"un_qip", diag(DiagnosticKind::UnQip), Verdict::NotNull},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::NotNull}},
                      "e_n (+) e_n in l1 (+) linf: un-null in the closed span, not in the whole space"};
}

GalleryEntry typewriter_entry() {
  ToleranceSpec ts;
  ts.tol = 1e-2;
  ts.window = 256;
  return GalleryEntry{"typewriter",
                      typewriter(kTypewriterLevel),
                      ts,
                      {{"in_measure", in_measure(0.5), Verdict::Null},
                       {"un_qip", diag(DiagnosticKind::UnQip), Verdict::Null},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::Null},
                       {"pointwise", diag(DiagnosticKind::Pointwise), Verdict::NotNull}},
                      "sliding dyadic indicators: null in measure and un-null, not almost everywhere null"};
}

GalleryEntry rademacher_entry() {
  const StepFunction x = rademacher_envelope();
  return GalleryEntry{"rademacher",
                      rademacher_modulated(x, kRademacherHorizon),
                      ToleranceSpec{},
                      {{"weak", weak(rademacher_functionals(), false), Verdict::Null},
                       {"modulus weak", weak(rademacher_functionals(), true), Verdict::NotNull},
                       {"un against x", un_against({x}, "envelope"), Verdict::NotNull},
                       {"un_qip", diag(DiagnosticKind::UnQip), Verdict::NotNull},
                       {"in_measure", in_measure(0.5), Verdict::NotNull}},
                      "x r_n in L2: weakly null against a step family while |x_n| = x"};
}

GalleryEntry overlap_entry() {
  const SpaceTag t = SpaceTag::lp(2.0);
  return GalleryEntry{"overlap_l2",
                      overlap_seq(t, kOverlapHorizon),
                      ToleranceSpec{},
                      {{"un_qip", diag(DiagnosticKind::UnQip), Verdict::Null},
                       {"norm", diag(DiagnosticKind::Norm), Verdict::NotNull},
                       {"pointwise", diag(DiagnosticKind::Pointwise), Verdict::Null}},
                      "un-null, not disjoint: stress input for disjointification"};
}

}  // namespace

VectorSequence std_units(const SpaceTag& tag, std::size_t horizon) {
  require_sequence_tag(tag);
  return VectorSequence(
      tag, horizon, [tag](std::size_t n) -> Element { return LatticeVector::unit(tag, n); }, "std_units_" + tag.name());
}

VectorSequence direct_sum_seq(std::size_t horizon) {
  return VectorSequence(
      SpaceTag::direct_sum(), horizon,
      [](std::size_t n) -> Element {
        return DirectSumVector(LatticeVector::unit(SpaceTag::lp(1.0), n), LatticeVector::unit(SpaceTag::linf(), n));
      },
      "direct_sum");
}

Element direct_sum_witness(std::size_t horizon) {
  return DirectSumVector(LatticeVector(SpaceTag::lp(1.0)), ones(SpaceTag::linf(), horizon).as<LatticeVector>());
}

VectorSequence typewriter(int k_max, const SpaceTag& tag) {
  if (k_max < 1) throw LatticeError(ErrorCode::InvalidArgument, "k_max must be >= 1");
  if (!tag.is_step()) throw LatticeError(ErrorCode::InvalidArgument, "typewriter needs a step tag");
  const std::size_t length = (std::size_t{1} << (k_max + 1)) - 1;
  return VectorSequence(
      tag, length,
      [tag](std::size_t n) -> Element {
        const int k = std::bit_width(n) - 1;
        return StepFunction::indicator(tag, k, n - (std::size_t{1} << k));
      },
      "typewriter");
}

StepFunction rademacher(const SpaceTag& tag, int n) {
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = (j % 2 == 0) ? 1.0 : -1.0;
  return StepFunction(tag, n, std::move(v));
}

VectorSequence rademacher_modulated(const StepFunction& x, std::size_t horizon, int max_level) {
  if (!is_positive(x)) throw LatticeError(ErrorCode::NegativeInput, "envelope must be >= 0");
  if (horizon > static_cast<std::size_t>(max_level)) {
    throw LatticeError(ErrorCode::RefinementOverflow, "horizon " + std::to_string(horizon) + " exceeds level " +
                                                          std::to_string(max_level));
  }
  const SpaceTag tag = x.tag();
  return VectorSequence(
      tag, horizon,
      [x, tag](std::size_t n) -> Element {
        // Cellwise product at the finer of the two levels.
        const StepFunction r = rademacher(tag, static_cast<int>(n));
        const int level = std::max(r.level(), x.level());
        const StepFunction xr = x.refined(level);
        const StepFunction rr = r.refined(level);
        std::vector<double> v(xr.values().size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = xr.values()[j] * rr.values()[j];
        return StepFunction(tag, level, std::move(v));
      },
      "rademacher");
}

VectorSequence overlap_seq(const SpaceTag& tag, std::size_t horizon) {
  require_sequence_tag(tag);
  return VectorSequence(
      tag, horizon,
      [tag](std::size_t n) -> Element {
        const double w = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 2000)));
        std::vector<LatticeVector::Entry> e;
        if (w != 0.0) {
          for (std::size_t i = 1; i < n; ++i) e.emplace_back(i, w);
        }
        e.emplace_back(n, 1.0);
        return LatticeVector(tag, std::move(e));
      },
      "overlap_" + tag.name());
}

StepFunction rademacher_envelope() { return StepFunction(SpaceTag::lp_step(2.0), 2, {1.0, 0.5, 0.0, 2.0}); }

std::vector<Element> rademacher_functionals() {
  const SpaceTag t = SpaceTag::lp_step(2.0);
  std::vector<Element> fs;
  for (std::size_t c = 0; c < 8; ++c) fs.push_back(StepFunction::indicator(t, 3, c));
  fs.push_back(StepFunction::constant(t, 1.0));
  return fs;
}

std::vector<std::string> gallery_names() {
  return {"std_units_linf", "std_units_c0", "std_units_l1", "std_units_l2",
          "direct_sum",     "typewriter",   "rademacher",   "overlap_l2"};
}

GalleryEntry gallery_entry(std::string_view name) {
  if (name == "std_units_linf") return std_units_linf();
  if (name == "std_units_c0") return std_units_c0();
  if (name == "std_units_l1") return std_units_l1();
  if (name == "std_units_l2") return std_units_l2();
  if (name == "direct_sum") return direct_sum();
  if (name == "typewriter") return typewriter_entry();
  if (name == "rademacher") return rademacher_entry();
  if (name == "overlap_l2") return overlap_entry();
  throw LatticeError(ErrorCode::ValidationError, "unknown gallery entry '" + std::string(name) + "'");
}

std::vector<GalleryEntry> gallery() {
  std::vector<GalleryEntry> out;
  for (const auto& n : gallery_names()) out.push_back(gallery_entry(n));
  return out;
}

}  // namespace unlat
