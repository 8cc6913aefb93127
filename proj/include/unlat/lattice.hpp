#pragma once

// Concrete vector-lattice models: sparse sequence spaces (c0, lp, l-infinity),
// dyadic step functions on [0,1) with a cell measure (Lp(mu)), and the
// direct sum l1 (+)_inf l-infinity. Every lattice operation is componentwise
// (or cellwise), so meets and joins are exact in floating point.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "unlat/errors.hpp"

namespace unlat {

inline constexpr std::size_t kDefaultHorizon = 4096;
inline constexpr int kDefaultMaxLevel = 20;

/// Finite measure on the 2^level dyadic cells of [0,1). Refinement splits
/// a cell's mass evenly between its two children.
class MeasureModel {
 public:
  /// Lebesgue measure: every cell at `level` weighs 2^-level.
  static MeasureModel lebesgue(int level = 0);

  /// Throws InvalidArgument unless weights.size() == 2^level, all weights
  /// are finite and >= 0, and the total mass is > 0.
  MeasureModel(int level, std::vector<double> weights);

  int level() const noexcept { return level_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double total_mass() const noexcept { return total_; }

  /// Mass of cell `cell` at `level` (level >= this->level()).
  double cell_weight(std::size_t cell, int level) const;

  /// Weights refined to `level` (level >= this->level()).
  std::vector<double> refined(int level) const;

  friend bool operator==(const MeasureModel& a, const MeasureModel& b);

 private:
  int level_;
  std::vector<double> weights_;
  double total_;
};

enum class SpaceKind { C0, Lp, LInftySeq, LpStep, DirectSumL1Linf };

/// Identifies the ambient Banach lattice of an element. Elements combine
/// only when their tags compare equal.
class SpaceTag {
 public:
  static SpaceTag c0();
  static SpaceTag lp(double p);
  static SpaceTag linf();
  static SpaceTag lp_step(double p, MeasureModel measure = MeasureModel::lebesgue());
  static SpaceTag direct_sum();

  SpaceKind kind() const noexcept { return kind_; }
  /// Exponent for Lp / LpStep; 0 for other kinds.
  double p() const noexcept { return p_; }
  /// Throws InvalidArgument for non-step kinds.
  const MeasureModel& measure() const;

  bool is_sequence() const noexcept {
    return kind_ == SpaceKind::C0 || kind_ == SpaceKind::Lp || kind_ == SpaceKind::LInftySeq;
  }
  bool is_step() const noexcept { return kind_ == SpaceKind::LpStep; }
  /// Order continuous and atomic (c0, lp).
  bool is_atomic_order_continuous() const noexcept {
    return kind_ == SpaceKind::C0 || kind_ == SpaceKind::Lp;
  }

  /// Short name, e.g. "c0", "l2", "linf", "L1" (Lebesgue step space),
  /// "L2(weighted)", "l1+linf".
  std::string name() const;

  friend bool operator==(const SpaceTag& a, const SpaceTag& b);

 private:
  SpaceTag(SpaceKind kind, double p, std::shared_ptr<const MeasureModel> m)
      : kind_(kind), p_(p), measure_(std::move(m)) {}

  SpaceKind kind_;
  double p_;
  std::shared_ptr<const MeasureModel> measure_;
};

/// Finitely supported sequence with 1-based indices. Storage is sorted by
/// index with no explicit zeros.
class LatticeVector {
 public:
  using Entry = std::pair<std::size_t, double>;

  explicit LatticeVector(SpaceTag tag);
  /// Entries may arrive in any order; duplicates are summed, zeros dropped.
  LatticeVector(SpaceTag tag, std::vector<Entry> entries);

  static LatticeVector unit(SpaceTag tag, std::size_t index, double value = 1.0);

  const SpaceTag& tag() const noexcept { return tag_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  double at(std::size_t index) const;
  std::size_t support_size() const noexcept { return entries_.size(); }
  /// Largest index in the support (0 when empty).
  std::size_t max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) = default;

 private:
  struct Trusted {};
  LatticeVector(SpaceTag tag, std::vector<Entry> entries, Trusted)
      : tag_(std::move(tag)), entries_(std::move(entries)) {}
  friend class ElementOps;

  SpaceTag tag_;
  std::vector<Entry> entries_;
};

/// Dyadic step function on [0,1): values[j] on [j 2^-L, (j+1) 2^-L).
/// The level is never below the level of the tag's measure.
class StepFunction {
 public:
  /// Throws unless tag is LpStep and values.size() == 2^level. A function
  /// coarser than the measure is refined on construction.
  StepFunction(SpaceTag tag, int level, std::vector<double> values);

  static StepFunction constant(SpaceTag tag, double value, int level = 0);
  static StepFunction indicator(SpaceTag tag, int level, std::size_t cell);

  const SpaceTag& tag() const noexcept { return tag_; }
  int level() const noexcept { return level_; }
  std::span<const double> values() const noexcept { return values_; }
  double cell_weight(std::size_t cell) const { return tag_.measure().cell_weight(cell, level_); }

  /// Value replication to a finer level.
  StepFunction refined(int level) const;

  /// Equal as functions: same tag and equal values after common refinement.
  friend bool operator==(const StepFunction& a, const StepFunction& b);

 private:
  SpaceTag tag_;
  int level_;
  std::vector<double> values_;
};

/// Element of l1 (+)_inf l-infinity with norm max(||left||_1, ||right||_inf).
class DirectSumVector {
 public:
  DirectSumVector();
  /// left must be tagged l1, right must be tagged linf.
  DirectSumVector(LatticeVector left, LatticeVector right);

  const SpaceTag& tag() const noexcept;
  const LatticeVector& left() const noexcept { return left_; }
  const LatticeVector& right() const noexcept { return right_; }

  friend bool operator==(const DirectSumVector& a, const DirectSumVector& b) = default;

 private:
  LatticeVector left_;
  LatticeVector right_;
};

/// Any element of one of the supported lattices.
class Element {
 public:
  using Variant = std::variant<LatticeVector, StepFunction, DirectSumVector>;

  Element(LatticeVector v) : v_(std::move(v)) {}
  Element(StepFunction v) : v_(std::move(v)) {}
  Element(DirectSumVector v) : v_(std::move(v)) {}

  const SpaceTag& tag() const noexcept;
  const Variant& variant() const noexcept { return v_; }

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }

  friend bool operator==(const Element& a, const Element& b) = default;

 private:
  Variant v_;
};

// Lattice and vector-space operations. Binary operations throw TagMismatch
// when tags differ; step functions are first refined to the finer level.
Element meet(const Element& x, const Element& y);
Element join(const Element& x, const Element& y);
Element abs(const Element& x);
Element pos_part(const Element& x);
Element neg_part(const Element& x);
Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator*(double a, const Element& x);
Element operator-(const Element& x);

Element zero(const SpaceTag& tag);
bool is_zero(const Element& x);
/// Every coordinate / cell value >= 0.
bool is_positive(const Element& x);
/// x <= y componentwise (after refinement).
bool leq(const Element& x, const Element& y);
/// Largest componentwise |x - y|.
double max_abs_diff(const Element& x, const Element& y);

/// Norm of the ambient space.
double norm(const Element& x);

/// u AND (m e). Throws NegativeInput if u or e has a negative coordinate.
Element truncate(const Element& u, const Element& e, double m);

/// Canonical quasi-interior point: (2^-n) on c0, lp and the l1 part of the
/// direct sum; constant 1 on l-infinity (strong unit) and step spaces.
/// Sequence parts are truncated at `horizon` (entries below the smallest
/// double vanish).
Element quasi_interior_point(const SpaceTag& tag, std::size_t horizon = kDefaultHorizon);

/// ||(|x| AND |y|)|| <= tol (1 + ||x|| + ||y||).
bool is_disjoint(const Element& x, const Element& y, double tol);

/// Sum f_i x_i (sequences, direct sum) or sum w_i f_i x_i (step functions).
double pairing(const Element& f, const Element& x);

/// Throws TagMismatch with a description of both tags.
void require_same_tag(const Element& x, const Element& y);

}  // namespace unlat
