#pragma once

#include <cstdint>

#include "rayvor/geometry.hpp"

namespace rayvor {

/// SplitMix64: tiny deterministic generator with identical output on every
/// platform, which the reproducibility guarantees depend on.
struct Rng {
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;

  explicit Rng(std::uint64_t seed = 0) : state(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Derives an independent stream for trial i of a seeded run.
[[nodiscard]] inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  Rng mix(seed);
  mix.state ^= 0xd1b54a32d192ed03ULL * (trial + 1);
  return Rng(mix.next());
}

/// Random site pair with positions in the box and a minimum separation.
[[nodiscard]] inline std::pair<Site, Site> random_site_pair(Rng& rng, const Bbox& box,
                                                            double min_separation) {
  for (;;) {
    const Point a{rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax)};
    const Point b{rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax)};
    const double ta = rng.uniform(-kPi, kPi);
    const double tb = rng.uniform(-kPi, kPi);
    if (distance(a, b) >= min_separation) {
      return {Site(a, ta), Site(b, tb)};
    }
  }
}

/// Random similarity without reflection: rotation in (-pi, pi], scale in
/// [e^-1, e], translation in [-3, 3]^2.
[[nodiscard]] inline SimilarityTransform random_similarity(Rng& rng) {
  SimilarityTransform t;
  t.rotation = rng.uniform(-kPi, kPi);
  t.scale = std::exp(rng.uniform(-1.0, 1.0));
  t.translation = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
  t.reflect = false;
  return t;
}

}  // namespace rayvor
