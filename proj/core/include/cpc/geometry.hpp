#pragma once

#include <span>
#include <string>
#include <vector>

#include "cpc/manifold.hpp"

namespace cpc {

/// Dense n^rank array of reals with row-major multi-index addressing.
class ComponentArray {
 public:
  ComponentArray() = default;
  ComponentArray(int dim, int rank);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }
  std::span<const double> data() const { return data_; }

  template <typename... I>
  double& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <typename... I>
  double operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  double max_abs() const;
  ComponentArray& operator-=(const ComponentArray& other);

 private:
  template <typename... I>
  std::size_t offset(I... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

/// A point evaluation of a tensor of valence (contravariant, covariant).
/// For valence (1,3) the layout is components(l, k, i, j) = (T(d_i, d_j) d_k)^l,
/// matching CurvatureBundle::riemann_ud.
struct TensorValue {
  int contravariant = 0;
  int covariant = 0;
  ComponentArray components;
  Vector base_point;
};

struct MetricAt {
  Matrix g;
  Matrix g_inv;
};

/// Evaluates the metric and its inverse; throws NotSPD when a leading
/// principal minor is <= 1e-12.
MetricAt metric_at(const ChartedManifold& m, std::span<const double> x);

/// Checks symmetric positive definiteness via leading principal minors.
/// Returns the index (1-based) of the first failing minor, or 0.
int first_failing_minor(const Matrix& g, double tol = 1e-12);

/// Point-evaluated curvature data.
///
///   gamma(k, i, j)            = Gamma^k_ij
///   riemann_ud(l, k, i, j)    = (R(d_i, d_j) d_k)^l
///   riemann_dddd(i, j, k, l)  = g(R(d_i, d_j) d_k, d_l)
///   ricci(i, j)               = sum_k riemann_ud(k, i, k, j)
///   q_operator                = g^{-1} ricci
///
/// with R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z, so the
/// round sphere has positive sectional curvature.
struct CurvatureBundle {
  Vector point;
  Matrix g;
  Matrix g_inv;
  ComponentArray gamma;
  ComponentArray riemann_ud;
  ComponentArray riemann_dddd;
  Matrix ricci;
  Matrix q_operator;
  double scal = 0.0;

  int dim() const { return static_cast<int>(g.rows()); }

  /// R(X, Y) W as a vector.
  Vector curvature_operator(const Vector& x, const Vector& y, const Vector& w) const;
  /// g(R(X1, X2) X3, X4).
  double riemann4(const Vector& x1, const Vector& x2, const Vector& x3, const Vector& x4) const;
  double ric(const Vector& x, const Vector& y) const { return x.dot(ricci * y); }
  double inner(const Vector& x, const Vector& y) const { return x.dot(g * y); }
};

ComponentArray christoffel_at(const ChartedManifold& m, std::span<const double> x);
ComponentArray christoffel_from_jet(const MetricJet& mj, const Matrix& g_inv);
CurvatureBundle curvature_at(const ChartedManifold& m, std::span<const double> x);

/// k(X, Y) = R(X,Y,Y,X) / (|X|^2 |Y|^2 - g(X,Y)^2). Throws DegeneratePlane
/// when the Gram determinant is <= 1e-10.
double sectional(const CurvatureBundle& bundle, const Vector& x, const Vector& y);

/// (nabla_X Z)^k = X^i (d_i Z^k + Gamma^k_ij Z^j).
Vector covariant_derivative(const ComponentArray& gamma, const VectorJet& z, const Vector& x);
Vector covariant_derivative_vector(const ChartedManifold& m, const std::string& field, const Vector& x,
                                   std::span<const double> point);

/// (nabla_X F) as a matrix: (nabla_X F)^k_j = X^i (d_i F^k_j + Gamma^k_im F^m_j - Gamma^m_ij F^k_m).
Matrix covariant_derivative(const ComponentArray& gamma, const EndoJet& f, const Vector& x);
Matrix covariant_derivative_endo(const ChartedManifold& m, const std::string& field, const Vector& x,
                                 std::span<const double> point);

/// [X, Y]^k = X^i d_i Y^k - Y^i d_i X^k.
Vector lie_bracket(const VectorJet& x, const VectorJet& y);
Vector lie_bracket(const ChartedManifold& m, const std::string& x, const std::string& y,
                   std::span<const double> point);

/// N(X,Y) = F^2[X,Y] + [FX,FY] - F[FX,Y] - F[X,FY].
Vector nijenhuis(const EndoJet& f, const VectorJet& x, const VectorJet& y);
Vector nijenhuis(const ChartedManifold& m, const std::string& f, const std::string& x, const std::string& y,
                 std::span<const double> point);

/// Columns are a g-orthonormal frame from Gram-Schmidt on the coordinate
/// basis in coordinate order.
Matrix orthonormal_frame(const Matrix& g);

/// Components of a (1,3) tensor (layout of TensorValue) in the frame E
/// (columns), i.e. T^a_{bcd} with a raised by E^{-1}.
ComponentArray to_frame(const ComponentArray& t13, const Matrix& frame);

/// Ricci eigenvalues (eigenvalues of Q), sorted descending.
Vector ricci_eigenvalues(const CurvatureBundle& bundle);

}  // namespace cpc
