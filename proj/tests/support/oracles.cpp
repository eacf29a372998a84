#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

double value_at(const cpc::Expr& e, const Vector& x) {
  return cpc::evaluate(e, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

// 4th-order central difference of a matrix-valued function along axis i.
template <typename F>
Matrix d4(F f, const Vector& x, int i, double h) {
  Vector a = x, b = x, c = x, d = x;
  a(i) += 2 * h;
  b(i) += h;
  c(i) -= h;
  d(i) -= 2 * h;
  return (-f(a) + 8.0 * f(b) - 8.0 * f(c) + f(d)) / (12.0 * h);
}

}  // namespace

Vector fd_gradient(const cpc::Expr& e, const Vector& x, double h) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (value_at(e, a) - value_at(e, b)) / (2 * h);
  }
  return g;
}

Matrix fd_hessian(const cpc::Expr& e, const Vector& x, double h) {
  const Eigen::Index n = x.size();
  Matrix hs(n, n);
  const double f0 = value_at(e, x);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        Vector a = x, b = x;
        a(i) += h;
        b(i) -= h;
        hs(i, i) = (value_at(e, a) - 2 * f0 + value_at(e, b)) / (h * h);
        continue;
      }
      Vector pp = x, pm = x, mp = x, mm = x;
      pp(i) += h, pp(j) += h;
      pm(i) += h, pm(j) -= h;
      mp(i) -= h, mp(j) += h;
      mm(i) -= h, mm(j) -= h;
      hs(i, j) = (value_at(e, pp) - value_at(e, pm) - value_at(e, mp) + value_at(e, mm)) / (4 * h * h);
    }
  }
  return hs;
}

Matrix metric_values(const cpc::ChartedManifold& m, const Vector& x) {
  const int n = m.dim();
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = value_at(m.metric(i, j), x);
  return g;
}

ComponentArray fd_christoffel(const cpc::ChartedManifold& m, const Vector& x, double h) {
  const int n = m.dim();
  std::vector<Matrix> dg;
  for (int k = 0; k < n; ++k) {
    dg.push_back(d4([&](const Vector& y) { return metric_values(m, y); }, x, k, h));
  }
  const Matrix g_inv = metric_values(m, x).inverse();
  ComponentArray gamma(n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += g_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma(k, i, j) = 0.5 * s;
      }
  return gamma;
}

ComponentArray fd_riemann(const cpc::ChartedManifold& m, const Vector& x, double h) {
  const int n = m.dim();
  // dgamma[i] holds d_i Gamma(k, a, b) flattened as a matrix (k, a*n + b).
  auto flat = [&](const Vector& y) {
    const ComponentArray gm = fd_christoffel(m, y, h);
    Matrix out(n, n * n);
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(k, a * n + b) = gm(k, a, b);
    return out;
  };
  std::vector<Matrix> dgamma;
  for (int i = 0; i < n; ++i) dgamma.push_back(d4(flat, x, i, h));
  const ComponentArray gamma = fd_christoffel(m, x, h);
  ComponentArray r(n, 4);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = dgamma[i](l, j * n + k) - dgamma[j](l, i * n + k);
          for (int p = 0; p < n; ++p) v += gamma(l, i, p) * gamma(p, j, k) - gamma(l, j, p) * gamma(p, i, k);
          r(l, k, i, j) = v;
        }
  return r;
}

Matrix contract_ricci(const ComponentArray& riemann) {
  const int n = riemann.dim();
  Matrix ric = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ric(i, j) += riemann(k, i, k, j);
  return ric;
}

double scalar_curvature(const Matrix& ricci, const Matrix& g_inv) { return (g_inv * ricci).trace(); }

ComponentArray space_form_riemann(const Matrix& g, double k) {
  const int n = static_cast<int>(g.rows());
  ComponentArray r(n, 4);
  for (int l = 0; l < n; ++l)
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(l, c, i, j) = k * ((l == i ? g(j, c) : 0.0) - (l == j ? g(i, c) : 0.0));
  return r;
}

ComponentArray block_product_riemann(const std::vector<ComponentArray>& factors) {
  int n = 0;
  for (const ComponentArray& f : factors) n += f.dim();
  ComponentArray r(n, 4);
  int o = 0;
  for (const ComponentArray& f : factors) {
    const int d = f.dim();
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) r(o + l, o + k, o + i, o + j) = f(l, k, i, j);
    o += d;
  }
  return r;
}

double max_abs_diff(const ComponentArray& a, const ComponentArray& b) {
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = std::abs(da[i] - db[i]);
    if (std::isnan(d)) return d;
    worst = std::max(worst, d);
  }
  return worst;
}

Vector slice(const Vector& x, int offset, int len) { return x.segment(offset, len); }

}  // namespace oracle
