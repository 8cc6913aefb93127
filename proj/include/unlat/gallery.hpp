#pragma once

// Named example sequences with their pinned diagnostic verdicts.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unlat/diagnostic.hpp"
#include "unlat/sequence.hpp"

namespace unlat {

/// seq(n) = e_n. Throws InvalidArgument for non-sequence tags.
VectorSequence std_units(const SpaceTag& tag, std::size_t horizon);

/// seq(n) = e_n (+) e_n in l1 (+) linf.
VectorSequence direct_sum_seq(std::size_t horizon);
/// 0 (+) 1 over coordinates 1..horizon.
Element direct_sum_witness(std::size_t horizon);

/// Indicators of [j 2^-k, (j+1) 2^-k) for n = 2^k + j, 1 <= n < 2^(k_max+1),
/// in L1 over Lebesgue measure.
VectorSequence typewriter(int k_max, const SpaceTag& tag = SpaceTag::lp_step(1.0));

/// Level-n Rademacher function: (-1)^j on cell j of level n.
StepFunction rademacher(const SpaceTag& tag, int n);

/// seq(n) = x r_n. Throws NegativeInput unless x >= 0 and RefinementOverflow
/// when horizon > max_level.
VectorSequence rademacher_modulated(const StepFunction& x, std::size_t horizon, int max_level = kDefaultMaxLevel);

/// x_n = e_n + 2^-n (e_1 + ... + e_{n-1}).
VectorSequence overlap_seq(const SpaceTag& tag, std::size_t horizon);

struct Expectation {
  std::string label;
  DiagnosticSpec diagnostic;
  Verdict verdict;
};

struct GalleryEntry {
  std::string name;
  VectorSequence sequence;
  ToleranceSpec tolerance;
  std::vector<Expectation> expected;
  /// What the entry demonstrates.
  std::string provenance;
};

std::vector<std::string> gallery_names();
/// Throws ValidationError for an unknown name.
GalleryEntry gallery_entry(std::string_view name);
std::vector<GalleryEntry> gallery();

/// The level-2 modulating function used by the "rademacher" entry.
StepFunction rademacher_envelope();
/// Indicators of the level-3 cells plus the constant 1 (the "rademacher"
/// functional family).
std::vector<Element> rademacher_functionals();

}  // namespace unlat
