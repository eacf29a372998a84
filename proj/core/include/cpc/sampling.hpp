#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cpc/manifold.hpp"

namespace cpc {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Knobs shared by every sampled check.
struct SamplingOptions {
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
  int vectors_per_point = 20;
};

/// Seeded source of sample points and test vectors. Uses its own mapping
/// from 64-bit draws to doubles so output is identical across standard
/// libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  Vector point_in_box(const ChartedManifold& m);
  std::vector<Vector> points(const ChartedManifold& m, int count);

  /// Coordinate components uniform in [-1, 1].
  Vector raw_vector(int dim);
  /// Random vector rescaled to unit length in the metric g.
  Vector unit_vector(const Matrix& g);

 private:
  std::mt19937_64 engine_;
};

/// Sample points for a manifold; deterministic in (seed, count).
std::vector<Vector> sample_points(const ChartedManifold& m, const SamplingOptions& opts);

}  // namespace cpc
