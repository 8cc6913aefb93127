#include "unlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace unlat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::NegativeTestVector: return "NegativeTestVector";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MNotFound: return "MNotFound";
    case ErrorCode::NonStepSequence: return "NonStepSequence";
    case ErrorCode::RefinementOverflow: return "RefinementOverflow";
    case ErrorCode::NotOrderBounded: return "NotOrderBounded";
    case ErrorCode::NoIndexFound: return "NoIndexFound";
    case ErrorCode::NotADecomposition: return "NotADecomposition";
    case ErrorCode::NegativePart: return "NegativePart";
    case ErrorCode::HorizonExhausted: return "HorizonExhausted";
    case ErrorCode::SelectionStalled: return "SelectionStalled";
    case ErrorCode::NoRoom: return "NoRoom";
    case ErrorCode::NotUnNull: return "NotUnNull";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

void require_finite(double v, const char* where) {
  if (!std::isfinite(v)) {
    throw LatticeError(ErrorCode::NonFinite, std::string("non-finite value in ") + where);
  }
}

std::size_t cells_at(int level) { return std::size_t{1} << level; }

void check_level(int level) {
  if (level < 0 || level > 30) {
    throw LatticeError(ErrorCode::InvalidArgument, "step level out of range: " + std::to_string(level));
  }
}

}  // namespace

// ---------------------------------------------------------------- measure

MeasureModel MeasureModel::lebesgue(int level) {
  check_level(level);
  return MeasureModel(level, std::vector<double>(cells_at(level), std::ldexp(1.0, -level)));
}

MeasureModel::MeasureModel(int level, std::vector<double> weights)
    : level_(level), weights_(std::move(weights)), total_(0.0) {
  check_level(level);
  if (weights_.size() != cells_at(level)) {
    throw LatticeError(ErrorCode::InvalidArgument, "measure needs 2^level weights");
  }
  for (double w : weights_) {
    require_finite(w, "measure weights");
    if (w < 0.0) throw LatticeError(ErrorCode::InvalidArgument, "negative cell measure");
    total_ += w;
  }
  if (!(total_ > 0.0)) throw LatticeError(ErrorCode::InvalidArgument, "measure has zero total mass");
}

double MeasureModel::cell_weight(std::size_t cell, int level) const {
  const int shift = level - level_;
  return std::ldexp(weights_[cell >> shift], -shift);
}

std::vector<double> MeasureModel::refined(int level) const {
  if (level < level_) throw LatticeError(ErrorCode::InvalidArgument, "cannot coarsen a measure");
  std::vector<double> out(cells_at(level));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = cell_weight(j, level);
  return out;
}

bool operator==(const MeasureModel& a, const MeasureModel& b) {
  if (a.level_ == b.level_) return a.weights_ == b.weights_;
  const int level = std::max(a.level_, b.level_);
  for (std::size_t j = 0; j < cells_at(level); ++j) {
    if (a.cell_weight(j, level) != b.cell_weight(j, level)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- tags

SpaceTag SpaceTag::c0() { return SpaceTag(SpaceKind::C0, 0.0, nullptr); }

SpaceTag SpaceTag::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw LatticeError(ErrorCode::InvalidArgument, "lp needs finite p >= 1");
  return SpaceTag(SpaceKind::Lp, p, nullptr);
}

SpaceTag SpaceTag::linf() { return SpaceTag(SpaceKind::LInftySeq, 0.0, nullptr); }

SpaceTag SpaceTag::lp_step(double p, MeasureModel measure) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw LatticeError(ErrorCode::InvalidArgument, "Lp needs finite p >= 1");
  return SpaceTag(SpaceKind::LpStep, p, std::make_shared<const MeasureModel>(std::move(measure)));
}

SpaceTag SpaceTag::direct_sum() { return SpaceTag(SpaceKind::DirectSumL1Linf, 0.0, nullptr); }

const MeasureModel& SpaceTag::measure() const {
  if (!measure_) throw LatticeError(ErrorCode::InvalidArgument, "tag " + name() + " has no measure");
  return *measure_;
}

namespace {
std::string format_p(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}
}  // namespace

std::string SpaceTag::name() const {
  switch (kind_) {
    case SpaceKind::C0: return "c0";
    case SpaceKind::Lp: return "l" + format_p(p_);
    case SpaceKind::LInftySeq: return "linf";
    case SpaceKind::LpStep: {
      std::string s = "L" + format_p(p_);
      if (!(*measure_ == MeasureModel::lebesgue())) s += "(weighted)";
      return s;
    }
    case SpaceKind::DirectSumL1Linf: return "l1+linf";
  }
  return "?";
}

bool operator==(const SpaceTag& a, const SpaceTag& b) {
  if (a.kind_ != b.kind_ || a.p_ != b.p_) return false;
  if (a.measure_ == b.measure_) return true;
  if (!a.measure_ || !b.measure_) return false;
  return *a.measure_ == *b.measure_;
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  if (!(a.tag() == b.tag())) return false;
  const int level = std::max(a.level(), b.level());
  const int sa = level - a.level();
  const int sb = level - b.level();
  for (std::size_t j = 0; j < cells_at(level); ++j) {
    if (a.values()[j >> sa] != b.values()[j >> sb]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- vectors

LatticeVector::LatticeVector(SpaceTag tag) : tag_(std::move(tag)) {
  if (!tag_.is_sequence()) throw LatticeError(ErrorCode::InvalidArgument, "LatticeVector needs a sequence tag");
}

LatticeVector::LatticeVector(SpaceTag tag, std::vector<Entry> entries) : LatticeVector(std::move(tag)) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [i, v] : entries) {
    if (i == 0) throw LatticeError(ErrorCode::InvalidArgument, "sequence indices are 1-based");
    require_finite(v, "sequence coordinates");
    if (!entries_.empty() && entries_.back().first == i) {
      entries_.back().second += v;
    } else {
      entries_.emplace_back(i, v);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
  for (const auto& e : entries_) require_finite(e.second, "sequence coordinates");
}

LatticeVector LatticeVector::unit(SpaceTag tag, std::size_t index, double value) {
  return LatticeVector(std::move(tag), {{index, value}});
}

double LatticeVector::at(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  return (it != entries_.end() && it->first == index) ? it->second : 0.0;
}

StepFunction::StepFunction(SpaceTag tag, int level, std::vector<double> values)
    : tag_(std::move(tag)), level_(level), values_(std::move(values)) {
  if (!tag_.is_step()) throw LatticeError(ErrorCode::InvalidArgument, "StepFunction needs an LpStep tag");
  check_level(level);
  if (values_.size() != cells_at(level)) {
    throw LatticeError(ErrorCode::InvalidArgument, "step function needs 2^level values");
  }
  for (double v : values_) require_finite(v, "step values");
  for (double& v : values_) {
    if (v == 0.0) v = 0.0;  // normalise -0
  }
  if (level_ < tag_.measure().level()) *this = refined(tag_.measure().level());
}

StepFunction StepFunction::constant(SpaceTag tag, double value, int level) {
  return StepFunction(std::move(tag), level, std::vector<double>(cells_at(level), value));
}

StepFunction StepFunction::indicator(SpaceTag tag, int level, std::size_t cell) {
  std::vector<double> v(cells_at(level), 0.0);
  if (cell >= v.size()) throw LatticeError(ErrorCode::InvalidArgument, "indicator cell out of range");
  v[cell] = 1.0;
  return StepFunction(std::move(tag), level, std::move(v));
}

StepFunction StepFunction::refined(int level) const {
  if (level == level_) return *this;
  if (level < level_) throw LatticeError(ErrorCode::InvalidArgument, "cannot coarsen a step function");
  check_level(level);
  const int shift = level - level_;
  std::vector<double> out(cells_at(level));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = values_[j >> shift];
  StepFunction r = *this;
  r.level_ = level;
  r.values_ = std::move(out);
  return r;
}

DirectSumVector::DirectSumVector() : left_(SpaceTag::lp(1.0)), right_(SpaceTag::linf()) {}

DirectSumVector::DirectSumVector(LatticeVector left, LatticeVector right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!(left_.tag() == SpaceTag::lp(1.0)) || !(right_.tag() == SpaceTag::linf())) {
    throw LatticeError(ErrorCode::InvalidArgument, "direct sum needs (l1, linf) parts");
  }
}

const SpaceTag& DirectSumVector::tag() const noexcept {
  static const SpaceTag t = SpaceTag::direct_sum();
  return t;
}

const SpaceTag& Element::tag() const noexcept {
  return std::visit([](const auto& v) -> const SpaceTag& { return v.tag(); }, v_);
}

// ---------------------------------------------------------------- generic ops

class ElementOps {
 public:
  template <class F>
  static LatticeVector binary(const LatticeVector& x, const LatticeVector& y, F f) {
    std::vector<LatticeVector::Entry> out;
    out.reserve(x.entries_.size() + y.entries_.size());
    auto a = x.entries_.begin();
    auto b = y.entries_.begin();
    auto push = [&](std::size_t i, double v) {
      require_finite(v, "lattice operation");
      if (v != 0.0) out.emplace_back(i, v);
    };
    while (a != x.entries_.end() || b != y.entries_.end()) {
      if (b == y.entries_.end() || (a != x.entries_.end() && a->first < b->first)) {
        push(a->first, f(a->second, 0.0));
        ++a;
      } else if (a == x.entries_.end() || b->first < a->first) {
        push(b->first, f(0.0, b->second));
        ++b;
      } else {
        push(a->first, f(a->second, b->second));
        ++a;
        ++b;
      }
    }
    return LatticeVector(x.tag_, std::move(out), LatticeVector::Trusted{});
  }

  template <class F>
  static LatticeVector unary(const LatticeVector& x, F f) {
    std::vector<LatticeVector::Entry> out;
    out.reserve(x.entries_.size());
    for (const auto& [i, v] : x.entries_) {
      const double r = f(v);
      require_finite(r, "lattice operation");
      if (r != 0.0) out.emplace_back(i, r);
    }
    return LatticeVector(x.tag_, std::move(out), LatticeVector::Trusted{});
  }

  template <class F>
  static StepFunction binary(const StepFunction& x, const StepFunction& y, F f) {
    const int level = std::max(x.level(), y.level());
    const StepFunction xr = x.refined(level);
    const StepFunction yr = y.refined(level);
    std::vector<double> out(xr.values().size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f(xr.values()[j], yr.values()[j]);
    return StepFunction(x.tag(), level, std::move(out));
  }

  template <class F>
  static StepFunction unary(const StepFunction& x, F f) {
    std::vector<double> out(x.values().begin(), x.values().end());
    for (double& v : out) v = f(v);
    return StepFunction(x.tag(), x.level(), std::move(out));
  }

  template <class F>
  static DirectSumVector binary(const DirectSumVector& x, const DirectSumVector& y, F f) {
    return DirectSumVector(binary(x.left(), y.left(), f), binary(x.right(), y.right(), f));
  }

  template <class F>
  static DirectSumVector unary(const DirectSumVector& x, F f) {
    return DirectSumVector(unary(x.left(), f), unary(x.right(), f));
  }
};

void require_same_tag(const Element& x, const Element& y) {
  if (!(x.tag() == y.tag())) {
    throw LatticeError(ErrorCode::TagMismatch, x.tag().name() + " vs " + y.tag().name());
  }
}

namespace {

template <class F>
Element binary_op(const Element& x, const Element& y, F f) {
  require_same_tag(x, y);
  return std::visit(
      [&](const auto& a) -> Element {
        using T = std::decay_t<decltype(a)>;
        return Element(ElementOps::binary(a, y.as<T>(), f));
      },
      x.variant());
}

template <class F>
Element unary_op(const Element& x, F f) {
  return std::visit([&](const auto& a) -> Element { return Element(ElementOps::unary(a, f)); }, x.variant());
}

// Calls visit(a, b) on every aligned value pair; stops early when it returns false.
template <class P>
bool all_pairs(const LatticeVector& x, const LatticeVector& y, P pred) {
  auto a = x.entries().begin();
  auto b = y.entries().begin();
  while (a != x.entries().end() || b != y.entries().end()) {
    bool ok;
    if (b == y.entries().end() || (a != x.entries().end() && a->first < b->first)) {
      ok = pred(a->second, 0.0);
      ++a;
    } else if (a == x.entries().end() || b->first < a->first) {
      ok = pred(0.0, b->second);
      ++b;
    } else {
      ok = pred(a->second, b->second);
      ++a;
      ++b;
    }
    if (!ok) return false;
  }
  return true;
}

template <class P>
bool all_pairs(const StepFunction& x, const StepFunction& y, P pred) {
  const int level = std::max(x.level(), y.level());
  const int sx = level - x.level();
  const int sy = level - y.level();
  for (std::size_t j = 0; j < cells_at(level); ++j) {
    if (!pred(x.values()[j >> sx], y.values()[j >> sy])) return false;
  }
  return true;
}

template <class P>
bool all_pairs(const DirectSumVector& x, const DirectSumVector& y, P pred) {
  return all_pairs(x.left(), y.left(), pred) && all_pairs(x.right(), y.right(), pred);
}

template <class P>
bool all_pairs_element(const Element& x, const Element& y, P pred) {
  require_same_tag(x, y);
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        return all_pairs(a, y.as<T>(), pred);
      },
      x.variant());
}

double sup_abs(std::span<const LatticeVector::Entry> entries) {
  double s = 0.0;
  for (const auto& e : entries) s = std::max(s, std::abs(e.second));
  return s;
}

// (sum |v|^p)^(1/p), scaled by the largest magnitude so tiny coordinates
// do not underflow when raised to p.
double lp_norm(std::span<const LatticeVector::Entry> entries, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (const auto& e : entries) s += std::abs(e.second);
    return s;
  }
  const double scale = sup_abs(entries);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& e : entries) {
    const double r = std::abs(e.second) / scale;
    s += (p == 2.0) ? r * r : std::pow(r, p);
  }
  return scale * ((p == 2.0) ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

double step_norm(const StepFunction& f) {
  const double p = f.tag().p();
  const auto values = f.values();
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) s += f.cell_weight(j) * std::abs(values[j]);
    return s;
  }
  double scale = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (f.cell_weight(j) > 0.0) scale = std::max(scale, std::abs(values[j]));
  }
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double r = std::abs(values[j]) / scale;
    s += f.cell_weight(j) * ((p == 2.0) ? r * r : std::pow(r, p));
  }
  return scale * ((p == 2.0) ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

double sequence_norm(const LatticeVector& x) {
  switch (x.tag().kind()) {
    case SpaceKind::C0:
    case SpaceKind::LInftySeq: return sup_abs(x.entries());
    case SpaceKind::Lp: return lp_norm(x.entries(), x.tag().p());
    default: break;
  }
  throw LatticeError(ErrorCode::InvalidArgument, "not a sequence tag");
}

double sparse_dot(const LatticeVector& f, const LatticeVector& x) {
  double s = 0.0;
  auto a = f.entries().begin();
  auto b = x.entries().begin();
  while (a != f.entries().end() && b != x.entries().end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

}  // namespace

Element meet(const Element& x, const Element& y) {
  return binary_op(x, y, [](double a, double b) { return std::min(a, b); });
}

Element join(const Element& x, const Element& y) {
  return binary_op(x, y, [](double a, double b) { return std::max(a, b); });
}

Element abs(const Element& x) {
  return unary_op(x, [](double a) { return std::abs(a); });
}

Element pos_part(const Element& x) {
  return unary_op(x, [](double a) { return std::max(a, 0.0); });
}

Element neg_part(const Element& x) {
  return unary_op(x, [](double a) { return std::max(-a, 0.0); });
}

Element operator+(const Element& x, const Element& y) {
  return binary_op(x, y, [](double a, double b) { return a + b; });
}

Element operator-(const Element& x, const Element& y) {
  return binary_op(x, y, [](double a, double b) { return a - b; });
}

Element operator*(double a, const Element& x) {
  require_finite(a, "scalar");
  return unary_op(x, [a](double v) { return a * v; });
}

Element operator-(const Element& x) {
  return unary_op(x, [](double v) { return -v; });
}

Element zero(const SpaceTag& tag) {
  switch (tag.kind()) {
    case SpaceKind::C0:
    case SpaceKind::Lp:
    case SpaceKind::LInftySeq: return LatticeVector(tag);
    case SpaceKind::LpStep: return StepFunction::constant(tag, 0.0, tag.measure().level());
    case SpaceKind::DirectSumL1Linf: return DirectSumVector();
  }
  throw LatticeError(ErrorCode::InvalidArgument, "unknown tag");
}

bool is_zero(const Element& x) {
  return all_pairs_element(x, x, [](double a, double) { return a == 0.0; });
}

bool is_positive(const Element& x) {
  return all_pairs_element(x, x, [](double a, double) { return a >= 0.0; });
}

bool leq(const Element& x, const Element& y) {
  return all_pairs_element(x, y, [](double a, double b) { return a <= b; });
}

double max_abs_diff(const Element& x, const Element& y) {
  double m = 0.0;
  all_pairs_element(x, y, [&m](double a, double b) {
    m = std::max(m, std::abs(a - b));
    return true;
  });
  return m;
}

double norm(const Element& x) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LatticeVector>) {
          return sequence_norm(v);
        } else if constexpr (std::is_same_v<T, StepFunction>) {
          return step_norm(v);
        } else {
          return std::max(lp_norm(v.left().entries(), 1.0), sup_abs(v.right().entries()));
        }
      },
      x.variant());
}

Element truncate(const Element& u, const Element& e, double m) {
  require_same_tag(u, e);
  if (!is_positive(u) || !is_positive(e)) {
    throw LatticeError(ErrorCode::NegativeInput, "truncate needs u >= 0 and e >= 0");
  }
  return meet(u, m * e);
}

Element quasi_interior_point(const SpaceTag& tag, std::size_t horizon) {
  auto geometric = [horizon](const SpaceTag& t) {
    std::vector<LatticeVector::Entry> entries;
    for (std::size_t n = 1; n <= horizon; ++n) {
      const double v = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 2000)));
      if (v == 0.0) break;
      entries.emplace_back(n, v);
    }
    return LatticeVector(t, std::move(entries));
  };
  auto ones = [horizon](const SpaceTag& t) {
    std::vector<LatticeVector::Entry> entries;
    entries.reserve(horizon);
    for (std::size_t n = 1; n <= horizon; ++n) entries.emplace_back(n, 1.0);
    return LatticeVector(t, std::move(entries));
  };
  switch (tag.kind()) {
    case SpaceKind::C0:
    case SpaceKind::Lp: return geometric(tag);
    case SpaceKind::LInftySeq: return ones(tag);
    case SpaceKind::LpStep: return StepFunction::constant(tag, 1.0, tag.measure().level());
    case SpaceKind::DirectSumL1Linf: return DirectSumVector(geometric(SpaceTag::lp(1.0)), ones(SpaceTag::linf()));
  }
  throw LatticeError(ErrorCode::InvalidArgument, "unsupported tag");
}

bool is_disjoint(const Element& x, const Element& y, double tol) {
  if (tol < 0.0) throw LatticeError(ErrorCode::InvalidArgument, "tol must be >= 0");
  return norm(meet(abs(x), abs(y))) <= tol * (1.0 + norm(x) + norm(y));
}

double pairing(const Element& f, const Element& x) {
  require_same_tag(f, x);
  return std::visit(
      [&](const auto& fv) -> double {
        using T = std::decay_t<decltype(fv)>;
        const T& xv = x.as<T>();
        if constexpr (std::is_same_v<T, LatticeVector>) {
          return sparse_dot(fv, xv);
        } else if constexpr (std::is_same_v<T, StepFunction>) {
          const int level = std::max(fv.level(), xv.level());
          const int sf = level - fv.level();
          const int sx = level - xv.level();
          const MeasureModel& mu = fv.tag().measure();
          auto term = [&](std::size_t j) {
            return mu.cell_weight(j, level) * fv.values()[j >> sf] * xv.values()[j >> sx];
          };
          if (level == 0) return term(0);
          // Sibling cells are summed first, so sign patterns that cancel
          // cellwise give an exact zero.
          double s = 0.0;
          for (std::size_t j = 0; j < cells_at(level); j += 2) s += term(j) + term(j + 1);
          return s;
        } else {
          return sparse_dot(fv.left(), xv.left()) + sparse_dot(fv.right(), xv.right());
        }
      },
      f.variant());
}

}  // namespace unlat
