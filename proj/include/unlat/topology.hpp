#pragma once

// Neighborhood base of zero for the un-topology: V_{u,eps} = { x : || |x| AND u || < eps }.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unlat/io.hpp"
#include "unlat/lattice.hpp"

namespace unlat {

class Neighborhood {
 public:
  /// Throws NegativeInput if u is not >= 0, InvalidArgument if u = 0 or
  /// eps is not a positive finite number.
  Neighborhood(Element u, double eps);

  const Element& u() const noexcept { return u_; }
  double eps() const noexcept { return eps_; }
  const SpaceTag& tag() const noexcept { return u_.tag(); }

 private:
  Element u_;
  double eps_;
};

/// || |x| AND u ||; the quantity compared against eps.
double gauge(const Neighborhood& v, const Element& x);

/// Strict: gauge < eps, no slack.
bool contains(const Neighborhood& v, const Element& x);

/// V_{u1 OR u2, min(eps1, eps2)}.
Neighborhood base_intersection(const Neighborhood& a, const Neighborhood& b);

/// V_{u, eps - || |y| AND u ||}; throws NoRoom unless y is in V.
Neighborhood translate(const Neighborhood& v, const Element& y);

struct AxiomReport {
  std::string axiom;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::optional<Json> first_counterexample;
};

Json to_json(const AxiomReport& r);

/// Randomised checks of: "zero", "intersection", "sum" (V + V in V_{2eps}),
/// "scalar" (|lambda| <= 1), "separation" (x != 0 not in V_{|x|,||x||}) and
/// "translation" (y + V_{u,delta} in V_{u,eps}). Samples are split over
/// `workers` threads with sub-seeds derived from `seed`; the result does not
/// depend on the worker count.
std::vector<AxiomReport> axiom_suite(const SpaceTag& tag, std::size_t samples, std::uint64_t seed,
                                     unsigned workers = 4);

/// Tags the suite knows how to sample: c0, lp, linf, Lp step, l1+linf.
bool axiom_suite_supports(const SpaceTag& tag);

}  // namespace unlat
