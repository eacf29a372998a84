#include "cpc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "cpc/errors.hpp"

namespace cpc {

ComponentArray::ComponentArray(int dim, int rank) : dim_(dim), rank_(rank) {
  std::size_t size = 1;
  for (int r = 0; r < rank; ++r) size *= static_cast<std::size_t>(dim);
  data_.assign(size, 0.0);
}

double ComponentArray::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

ComponentArray& ComponentArray::operator-=(const ComponentArray& other) {
  if (other.data_.size() != data_.size()) throw DimensionMismatch("component array shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

int first_failing_minor(const Matrix& g, double tol) {
  for (Eigen::Index k = 1; k <= g.rows(); ++k) {
    if (!(g.topLeftCorner(k, k).determinant() > tol)) return static_cast<int>(k);
  }
  return 0;
}

MetricAt metric_at(const ChartedManifold& m, std::span<const double> x) {
  const int n = m.dim();
  if (static_cast<int>(x.size()) != n) throw DimensionMismatch("point dimension does not match chart");
  MetricAt out;
  out.g.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out.g(i, j) = out.g(j, i) = evaluate(m.metric(i, j), x);
  }
  if (const int minor = first_failing_minor(out.g); minor != 0) {
    throw NotSPD(std::vector<double>(x.begin(), x.end()), minor);
  }
  out.g_inv = out.g.inverse();
  return out;
}

ComponentArray christoffel_from_jet(const MetricJet& mj, const Matrix& g_inv) {
  const int n = static_cast<int>(mj.g.rows());
  ComponentArray gamma(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          const double first_kind = mj.d1[static_cast<std::size_t>(i)](j, l) +
                                    mj.d1[static_cast<std::size_t>(j)](i, l) -
                                    mj.d1[static_cast<std::size_t>(l)](i, j);
          s += g_inv(k, l) * first_kind;
        }
        gamma(k, i, j) = gamma(k, j, i) = 0.5 * s;
      }
    }
  }
  return gamma;
}

ComponentArray christoffel_at(const ChartedManifold& m, std::span<const double> x) {
  const MetricAt met = metric_at(m, x);
  return christoffel_from_jet(evaluate_metric_jet(m, x), met.g_inv);
}

CurvatureBundle curvature_at(const ChartedManifold& m, std::span<const double> x) {
  const int n = m.dim();
  const MetricAt met = metric_at(m, x);
  const MetricJet mj = evaluate_metric_jet(m, x);

  CurvatureBundle b;
  b.point = Eigen::Map<const Vector>(x.data(), n);
  b.g = met.g;
  b.g_inv = met.g_inv;
  b.gamma = christoffel_from_jet(mj, met.g_inv);

  // d_m Gamma^k_ij = -(g^{-1} d_m g)^k_a Gamma^a_ij + 1/2 g^{kl} d_m S_lij
  ComponentArray dgamma(n, 4);  // (m, k, i, j)
  for (int mm = 0; mm < n; ++mm) {
    const Matrix ginv_dg = met.g_inv * mj.d1[static_cast<std::size_t>(mm)];
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int a = 0; a < n; ++a) s -= ginv_dg(k, a) * b.gamma(a, i, j);
          double t = 0.0;
          for (int l = 0; l < n; ++l) {
            const double ds = mj.d2[static_cast<std::size_t>(mm * n + i)](j, l) +
                              mj.d2[static_cast<std::size_t>(mm * n + j)](i, l) -
                              mj.d2[static_cast<std::size_t>(mm * n + l)](i, j);
            t += met.g_inv(k, l) * ds;
          }
          dgamma(mm, k, i, j) = dgamma(mm, k, j, i) = s + 0.5 * t;
        }
      }
    }
  }

  b.riemann_ud = ComponentArray(n, 4);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double quad = 0.0;
          for (int mm = 0; mm < n; ++mm) {
            quad += b.gamma(l, i, mm) * b.gamma(mm, j, k) - b.gamma(l, j, mm) * b.gamma(mm, i, k);
          }
          const double v = (dgamma(i, l, j, k) - dgamma(j, l, i, k)) + quad;
          b.riemann_ud(l, k, i, j) = v;
          b.riemann_ud(l, k, j, i) = -v;
        }
      }
    }
  }

  b.riemann_dddd = ComponentArray(n, 4);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int mm = 0; mm < n; ++mm) s += met.g(l, mm) * b.riemann_ud(mm, k, i, j);
          b.riemann_dddd(i, j, k, l) = s;
        }
      }
    }
  }

  Matrix ric = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) ric(i, j) += b.riemann_ud(k, i, k, j);
    }
  }
  b.ricci = 0.5 * (ric + ric.transpose());
  b.q_operator = met.g_inv * b.ricci;
  b.scal = b.q_operator.trace();
  return b;
}

Vector CurvatureBundle::curvature_operator(const Vector& x, const Vector& y, const Vector& w) const {
  const int n = dim();
  Vector out = Vector::Zero(n);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      if (w(k) == 0.0) continue;
      for (int i = 0; i < n; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < n; ++j) s += riemann_ud(l, k, i, j) * x(i) * y(j) * w(k);
      }
    }
    out(l) = s;
  }
  return out;
}

double CurvatureBundle::riemann4(const Vector& x1, const Vector& x2, const Vector& x3,
                                 const Vector& x4) const {
  return curvature_operator(x1, x2, x3).dot(g * x4);
}

double sectional(const CurvatureBundle& bundle, const Vector& x, const Vector& y) {
  const double xx = bundle.inner(x, x);
  const double yy = bundle.inner(y, y);
  const double xy = bundle.inner(x, y);
  const double gram = xx * yy - xy * xy;
  if (!(gram > 1e-10)) throw DegeneratePlane("vectors do not span a 2-plane (Gram determinant " + std::to_string(gram) + ")");
  return bundle.riemann4(x, y, y, x) / gram;
}

Vector covariant_derivative(const ComponentArray& gamma, const VectorJet& z, const Vector& x) {
  const int n = static_cast<int>(x.size());
  Vector out = z.jacobian * x;
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) s += gamma(k, i, j) * x(i) * z.value(j);
    }
    out(k) += s;
  }
  return out;
}

Vector covariant_derivative_vector(const ChartedManifold& m, const std::string& field, const Vector& x,
                                   std::span<const double> point) {
  const VectorJet z = evaluate_vector_field(m, field, point);
  return covariant_derivative(christoffel_at(m, point), z, x);
}

Matrix covariant_derivative(const ComponentArray& gamma, const EndoJet& f, const Vector& x) {
  const int n = static_cast<int>(x.size());
  Matrix out = Matrix::Zero(n, n);
  Matrix gx = Matrix::Zero(n, n);  // gx(k, m) = Gamma^k_im X^i
  for (int k = 0; k < n; ++k) {
    for (int mm = 0; mm < n; ++mm) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += gamma(k, i, mm) * x(i);
      gx(k, mm) = s;
    }
  }
  for (int i = 0; i < n; ++i) out += x(i) * f.partials[static_cast<std::size_t>(i)];
  out += gx * f.value - f.value * gx;
  return out;
}

Matrix covariant_derivative_endo(const ChartedManifold& m, const std::string& field, const Vector& x,
                                 std::span<const double> point) {
  const EndoJet f = evaluate_endomorphism(m, field, point);
  return covariant_derivative(christoffel_at(m, point), f, x);
}

Vector lie_bracket(const VectorJet& x, const VectorJet& y) {
  return y.jacobian * x.value - x.jacobian * y.value;
}

Vector lie_bracket(const ChartedManifold& m, const std::string& x, const std::string& y,
                   std::span<const double> point) {
  return lie_bracket(evaluate_vector_field(m, x, point), evaluate_vector_field(m, y, point));
}

Vector nijenhuis(const EndoJet& f, const VectorJet& x, const VectorJet& y) {
  const VectorJet fx = apply(f, x);
  const VectorJet fy = apply(f, y);
  const Matrix& F = f.value;
  return F * (F * lie_bracket(x, y)) + lie_bracket(fx, fy) - F * lie_bracket(fx, y) -
         F * lie_bracket(x, fy);
}

Vector nijenhuis(const ChartedManifold& m, const std::string& f, const std::string& x, const std::string& y,
                 std::span<const double> point) {
  return nijenhuis(evaluate_endomorphism(m, f, point), evaluate_vector_field(m, x, point),
                   evaluate_vector_field(m, y, point));
}

Matrix orthonormal_frame(const Matrix& g) {
  const Eigen::Index n = g.rows();
  Matrix e = Matrix::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    Vector v = e.col(a);
    for (Eigen::Index b = 0; b < a; ++b) v -= e.col(b).dot(g * v) * e.col(b);
    const double norm = std::sqrt(v.dot(g * v));
    if (!(norm > 0.0)) throw NotSPD({}, static_cast<int>(a + 1));
    e.col(a) = v / norm;
  }
  return e;
}

ComponentArray to_frame(const ComponentArray& t, const Matrix& e) {
  const int n = t.dim();
  const Matrix e_inv = e.inverse();
  // Contract one slot at a time: l (with e_inv), then k, i, j (with e).
  ComponentArray a(n, 4), b(n, 4);
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += e_inv(p, l) * t(l, k, i, j);
          a(p, k, i, j) = s;
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) s += a(p, k, i, j) * e(k, q);
          b(p, q, i, j) = s;
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) s += b(p, q, i, j) * e(i, r);
          a(p, q, r, j) = s;
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s_ = 0; s_ < n; ++s_) {
          double s = 0.0;
          for (int j = 0; j < n; ++j) s += a(p, q, r, j) * e(j, s_);
          b(p, q, r, s_) = s;
        }
  return b;
}

Vector ricci_eigenvalues(const CurvatureBundle& bundle) {
  const Matrix e = orthonormal_frame(bundle.g);
  const Matrix ric_on = e.transpose() * bundle.ricci * e;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (ric_on + ric_on.transpose()), Eigen::EigenvaluesOnly);
  Vector ev = solver.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

}  // namespace cpc
