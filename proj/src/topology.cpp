#include "unlat/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <random>

namespace unlat {

Neighborhood::Neighborhood(Element u, double eps) : u_(std::move(u)), eps_(eps) {
  if (!is_positive(u_)) throw LatticeError(ErrorCode::NegativeInput, "neighborhood vector must be >= 0");
  if (is_zero(u_)) throw LatticeError(ErrorCode::InvalidArgument, "neighborhood vector must be nonzero");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw LatticeError(ErrorCode::InvalidArgument, "eps must be > 0");
}

double gauge(const Neighborhood& v, const Element& x) {
  require_same_tag(x, v.u());
  return norm(meet(abs(x), v.u()));
}

bool contains(const Neighborhood& v, const Element& x) { return gauge(v, x) < v.eps(); }

Neighborhood base_intersection(const Neighborhood& a, const Neighborhood& b) {
  require_same_tag(a.u(), b.u());
  return Neighborhood(join(a.u(), b.u()), std::min(a.eps(), b.eps()));
}

Neighborhood translate(const Neighborhood& v, const Element& y) {
  const double g = gauge(v, y);
  if (!(g < v.eps())) throw LatticeError(ErrorCode::NoRoom, "y is not in the neighborhood");
  return Neighborhood(v.u(), v.eps() - g);
}

Json to_json(const AxiomReport& r) {
  Json j;
  j["axiom"] = r.axiom;
  j["samples"] = r.samples;
  j["failures"] = r.failures;
  j["first_counterexample"] = r.first_counterexample ? *r.first_counterexample : Json(nullptr);
  return j;
}

bool axiom_suite_supports(const SpaceTag& tag) {
  switch (tag.kind()) {
    case SpaceKind::C0:
    case SpaceKind::Lp:
    case SpaceKind::LInftySeq:
    case SpaceKind::LpStep:
    case SpaceKind::DirectSumL1Linf: return true;
  }
  return false;
}

namespace {

constexpr std::size_t kMaxCoord = 32;
constexpr std::size_t kMaxSupport = 8;
constexpr int kMaxSampleLevel = 5;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Sampler {
 public:
  Sampler(const SpaceTag& tag, std::uint64_t seed) : tag_(tag), rng_(seed) {}

  double coord() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng_); }
  double lambda() { return coord(); }
  double eps() { return std::pow(10.0, std::uniform_real_distribution<double>(-4.0, 0.0)(rng_)); }

  LatticeVector sparse(const SpaceTag& tag) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, kMaxSupport)(rng_);
    std::vector<LatticeVector::Entry> e;
    for (std::size_t i = 0; i < k; ++i) {
      e.emplace_back(std::uniform_int_distribution<std::size_t>(1, kMaxCoord)(rng_), coord());
    }
    return LatticeVector(tag, std::move(e));
  }

  Element any() {
    switch (tag_.kind()) {
      case SpaceKind::LpStep: {
        const int level = std::uniform_int_distribution<int>(0, kMaxSampleLevel)(rng_);
        std::vector<double> v(std::size_t{1} << level);
        for (double& x : v) x = std::bernoulli_distribution(0.5)(rng_) ? coord() : 0.0;
        return StepFunction(tag_, level, std::move(v));
      }
      case SpaceKind::DirectSumL1Linf: return DirectSumVector(sparse(SpaceTag::lp(1.0)), sparse(SpaceTag::linf()));
      default: return sparse(tag_);
    }
  }

  Element nonzero() {
    for (;;) {
      Element x = any();
      if (!is_zero(x)) return x;
    }
  }

  Neighborhood neighborhood() { return Neighborhood(abs(nonzero()), eps()); }

  /// Random x shrunk by halving until it lies in v.
  Element member(const Neighborhood& v) {
    Element x = any();
    for (int i = 0; i < 1100 && !contains(v, x); ++i) x = 0.5 * x;
    return x;
  }

 private:
  SpaceTag tag_;
  std::mt19937_64 rng_;
};

Json nb_json(const Neighborhood& v) { return Json{{"u", element_to_json(v.u())}, {"eps", v.eps()}}; }

// One trial; returns a counterexample description on failure.
using Trial = std::function<std::optional<Json>(Sampler&)>;

std::optional<Json> trial_zero(Sampler& s) {
  Neighborhood v = s.neighborhood();
  if (contains(v, zero(v.tag()))) return std::nullopt;
  return Json{{"V", nb_json(v)}};
}

std::optional<Json> trial_intersection(Sampler& s) {
  Neighborhood a = s.neighborhood();
  Neighborhood b = s.neighborhood();
  Neighborhood w = base_intersection(a, b);
  Element x = s.member(w);
  if (contains(a, x) && contains(b, x)) return std::nullopt;
  return Json{{"V1", nb_json(a)}, {"V2", nb_json(b)}, {"x", element_to_json(x)}};
}

std::optional<Json> trial_sum(Sampler& s) {
  Neighborhood v = s.neighborhood();
  Element x = s.member(v);
  Element y = s.member(v);
  if (contains(Neighborhood(v.u(), 2.0 * v.eps()), x + y)) return std::nullopt;
  return Json{{"V", nb_json(v)}, {"x", element_to_json(x)}, {"y", element_to_json(y)}};
}

std::optional<Json> trial_scalar(Sampler& s) {
  Neighborhood v = s.neighborhood();
  Element x = s.member(v);
  const double lambda = s.lambda();
  if (contains(v, lambda * x)) return std::nullopt;
  return Json{{"V", nb_json(v)}, {"x", element_to_json(x)}, {"lambda", lambda}};
}

std::optional<Json> trial_separation(Sampler& s) {
  Element x = s.nonzero();
  if (!contains(Neighborhood(abs(x), norm(x)), x)) return std::nullopt;
  return Json{{"x", element_to_json(x)}};
}

std::optional<Json> trial_translation(Sampler& s) {
  Neighborhood v = s.neighborhood();
  Element y = s.member(v);
  Neighborhood w = translate(v, y);
  Element x = s.member(w);
  if (contains(v, y + x)) return std::nullopt;
  return Json{{"V", nb_json(v)}, {"y", element_to_json(y)}, {"x", element_to_json(x)}, {"delta", w.eps()}};
}

struct Partial {
  std::size_t failures = 0;
  std::size_t first = 0;
  std::optional<Json> example;
};

Partial run_range(const SpaceTag& tag, const Trial& trial, std::uint64_t seed, std::size_t begin, std::size_t end) {
  Partial p;
  for (std::size_t i = begin; i < end; ++i) {
    Sampler s(tag, splitmix(seed ^ splitmix(i)));
    if (auto ce = trial(s)) {
      if (!p.example) {
        p.first = i;
        (*ce)["sample"] = i;
        p.example = std::move(ce);
      }
      ++p.failures;
    }
  }
  return p;
}

}  // namespace

std::vector<AxiomReport> axiom_suite(const SpaceTag& tag, std::size_t samples, std::uint64_t seed, unsigned workers) {
  if (!axiom_suite_supports(tag)) throw LatticeError(ErrorCode::InvalidArgument, "unsupported tag " + tag.name());
  const std::vector<std::pair<std::string, Trial>> axioms = {
      {"zero", trial_zero},     {"intersection", trial_intersection}, {"sum", trial_sum},
      {"scalar", trial_scalar}, {"separation", trial_separation},     {"translation", trial_translation},
  };
  workers = std::max(1u, workers);
  std::vector<AxiomReport> out;
  for (std::size_t a = 0; a < axioms.size(); ++a) {
    const std::uint64_t sub = splitmix(seed + 0x1000 * (a + 1));
    std::vector<std::future<Partial>> jobs;
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(samples, w * chunk);
      const std::size_t e = std::min(samples, b + chunk);
      jobs.push_back(std::async(std::launch::async, run_range, tag, axioms[a].second, sub, b, e));
    }
    AxiomReport r{axioms[a].first, samples, 0, std::nullopt};
    for (auto& j : jobs) {
      Partial p = j.get();
      r.failures += p.failures;
      if (p.example && !r.first_counterexample) r.first_counterexample = std::move(p.example);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace unlat
