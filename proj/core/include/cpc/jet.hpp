#pragma once

#include <span>

#include <Eigen/Dense>

#include "cpc/expr.hpp"

namespace cpc {

/// Second-order jet of a scalar at a point: value, gradient and Hessian.
/// The Hessian is built symmetric bit-for-bit (upper triangle mirrored).
struct Jet2 {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  static Jet2 constant(double value, int dim);
  static Jet2 variable(int index, double value, int dim);

  int dim() const { return static_cast<int>(grad.size()); }
};

/// Evaluates an expression and its first and second partial derivatives.
/// Throws DomainError naming the offending subexpression.
Jet2 eval_jet2(const Expr& e, std::span<const double> point);

}  // namespace cpc
