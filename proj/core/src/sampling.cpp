#include "cpc/sampling.hpp"

#include <cmath>

namespace cpc {

double Sampler::uniform01() {
  // 53 random mantissa bits.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Vector Sampler::point_in_box(const ChartedManifold& m) {
  Vector x(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    const Interval& iv = m.sample_box()[static_cast<std::size_t>(i)];
    x(i) = uniform(iv.lo, iv.hi);
  }
  return x;
}

std::vector<Vector> Sampler::points(const ChartedManifold& m, int count) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) out.push_back(point_in_box(m));
  return out;
}

Vector Sampler::raw_vector(int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = uniform(-1.0, 1.0);
  return v;
}

Vector Sampler::unit_vector(const Matrix& g) {
  for (;;) {
    Vector v = raw_vector(static_cast<int>(g.rows()));
    const double norm2 = v.dot(g * v);
    if (norm2 > 1e-6) return v / std::sqrt(norm2);
  }
}

std::vector<Vector> sample_points(const ChartedManifold& m, const SamplingOptions& opts) {
  Sampler s(opts.seed);
  return s.points(m, opts.samples);
}

}  // namespace cpc
