#pragma once

// Random elements for property tests.

#include <random>

#include "unlat/lattice.hpp"

namespace unlat::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::size_t index(std::size_t a, std::size_t b) { return std::uniform_int_distribution<std::size_t>(a, b)(rng_); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

  LatticeVector sparse(const SpaceTag& tag, std::size_t max_index = 16, std::size_t max_support = 6) {
    std::vector<LatticeVector::Entry> e;
    const std::size_t k = index(0, max_support);
    for (std::size_t i = 0; i < k; ++i) e.emplace_back(index(1, max_index), uniform(-3.0, 3.0));
    return LatticeVector(tag, std::move(e));
  }

  StepFunction step(const SpaceTag& tag, int max_level = 4) {
    const int level = static_cast<int>(index(0, static_cast<std::size_t>(max_level)));
    std::vector<double> v(std::size_t{1} << level);
    for (double& x : v) x = coin() ? uniform(-3.0, 3.0) : 0.0;
    return StepFunction(tag, level, std::move(v));
  }

  Element element(const SpaceTag& tag) {
    switch (tag.kind()) {
      case SpaceKind::LpStep: return step(tag);
      case SpaceKind::DirectSumL1Linf: return DirectSumVector(sparse(SpaceTag::lp(1.0)), sparse(SpaceTag::linf()));
      default: return sparse(tag);
    }
  }

  Element positive(const SpaceTag& tag) { return abs(element(tag)); }

 private:
  std::mt19937_64 rng_;
};

/// Every tag the library models, including a weighted step measure.
inline std::vector<SpaceTag> all_tags() {
  return {SpaceTag::c0(),
          SpaceTag::lp(1.0),
          SpaceTag::lp(2.0),
          SpaceTag::lp(3.5),
          SpaceTag::linf(),
          SpaceTag::lp_step(1.0),
          SpaceTag::lp_step(2.0),
          SpaceTag::lp_step(1.0, MeasureModel(2, {0.5, 0.125, 0.25, 0.125})),
          SpaceTag::direct_sum()};
}

}  // namespace unlat::testing
