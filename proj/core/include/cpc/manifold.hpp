#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cpc/expr.hpp"
#include "cpc/jet.hpp"

namespace cpc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A Riemannian metric and named tensor fields over a single coordinate chart.
///
/// Endomorphism components are stored row-major: entry (i, j) is F^i_j, so
/// (F X)^i = F^i_j X^j. One-form entry j is alpha_j.
class ChartedManifold {
 public:
  ChartedManifold(std::string name, std::vector<std::string> coord_names, std::vector<Interval> box);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const std::vector<Interval>& sample_box() const { return box_; }

  /// Sets g_ij and g_ji together.
  void set_metric(int i, int j, Expr e);
  const Expr& metric(int i, int j) const { return metric_[static_cast<std::size_t>(i * dim_ + j)]; }

  void add_vector_field(const std::string& name, std::vector<Expr> components);
  void add_one_form(const std::string& name, std::vector<Expr> components);
  void add_endomorphism(const std::string& name, std::vector<Expr> row_major);

  bool has_vector_field(const std::string& name) const { return vectors_.count(name) != 0; }
  bool has_one_form(const std::string& name) const { return forms_.count(name) != 0; }
  bool has_endomorphism(const std::string& name) const { return endos_.count(name) != 0; }

  /// Throw UnknownField when absent.
  const std::vector<Expr>& vector_field(const std::string& name) const;
  const std::vector<Expr>& one_form(const std::string& name) const;
  const std::vector<Expr>& endomorphism(const std::string& name) const;

  const std::map<std::string, std::vector<Expr>>& vector_fields() const { return vectors_; }
  const std::map<std::string, std::vector<Expr>>& one_forms() const { return forms_; }
  const std::map<std::string, std::vector<Expr>>& endomorphisms() const { return endos_; }

  bool in_box(std::span<const double> x) const;

 private:
  void check_components(const std::vector<Expr>& components, std::size_t expected,
                        const std::string& what) const;

  std::string name_;
  int dim_;
  std::vector<std::string> coord_names_;
  std::vector<Interval> box_;
  std::vector<Expr> metric_;
  std::map<std::string, std::vector<Expr>> vectors_;
  std::map<std::string, std::vector<Expr>> forms_;
  std::map<std::string, std::vector<Expr>> endos_;
};

/// Value and first derivatives of a vector field: jacobian(k, i) = d_i X^k.
struct VectorJet {
  Vector value;
  Matrix jacobian;
};

/// Value and first derivatives of a one-form: jacobian(j, i) = d_i alpha_j.
struct FormJet {
  Vector value;
  Matrix jacobian;
};

/// Value and first derivatives of an endomorphism field: partials[i] = d_i F.
struct EndoJet {
  Matrix value;
  std::vector<Matrix> partials;
};

/// Metric with first and second partials: d1[k](i,j) = d_k g_ij,
/// d2[k*n+l](i,j) = d_k d_l g_ij.
struct MetricJet {
  Matrix g;
  std::vector<Matrix> d1;
  std::vector<Matrix> d2;
};

std::vector<Jet2> eval_components(const std::vector<Expr>& components, std::span<const double> x);

MetricJet evaluate_metric_jet(const ChartedManifold& m, std::span<const double> x);
VectorJet evaluate_vector_field(const ChartedManifold& m, const std::string& name, std::span<const double> x);
FormJet evaluate_one_form(const ChartedManifold& m, const std::string& name, std::span<const double> x);
EndoJet evaluate_endomorphism(const ChartedManifold& m, const std::string& name, std::span<const double> x);

VectorJet constant_vector_jet(const Vector& v);
VectorJet operator+(const VectorJet& a, const VectorJet& b);
VectorJet operator-(const VectorJet& a, const VectorJet& b);
VectorJet operator*(double s, const VectorJet& a);

/// (F X) with its derivatives: d_i(F X) = (d_i F) X + F d_i X.
VectorJet apply(const EndoJet& f, const VectorJet& x);
/// Composition F∘G with derivatives.
EndoJet compose(const EndoJet& f, const EndoJet& g);
/// The field X ⊗ alpha (Y ↦ alpha(Y) X).
EndoJet outer(const VectorJet& x, const FormJet& alpha);
EndoJet operator+(const EndoJet& a, const EndoJet& b);
EndoJet operator-(const EndoJet& a, const EndoJet& b);
EndoJet operator*(double s, const EndoJet& a);
EndoJet identity_endo(int dim);

/// Component-wise composition of two endomorphism expression arrays.
std::vector<Expr> compose_endomorphism_expr(const std::vector<Expr>& f, const std::vector<Expr>& g, int dim);

}  // namespace cpc
