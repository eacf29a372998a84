#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cpc/manifold.hpp"

namespace cpc {

/// How a 2-form with components c_ij = d_i a_j - d_j a_i is paired with two
/// vectors. The engine default is kHalf: da(X,Y) = 1/2 c_ij X^i Y^j, i.e.
/// da(X,Y) = 1/2 (X a(Y) - Y a(X) - a([X,Y])). kUnit drops the 1/2.
enum class ExteriorConvention { kHalf, kUnit };

const char* to_string(ExteriorConvention c);

/// Pairs the antisymmetric component matrix of a 2-form with (X, Y).
double pair_two_form(const Matrix& components, const Vector& x, const Vector& y,
                     ExteriorConvention convention = ExteriorConvention::kHalf);

/// A point value of a k-form in the basis dx^I (I increasing), stored by
/// bitmask of I. Dimension is limited to 20.
class ExteriorForm {
 public:
  ExteriorForm(int dim, int degree);

  static ExteriorForm one_form(const Vector& components);
  /// From the antisymmetric matrix c with form = sum_{i<j} c_ij dx^i ^ dx^j.
  static ExteriorForm two_form(const Matrix& components);

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  double coefficient(std::uint32_t mask) const { return coeff_[mask]; }
  void set_coefficient(std::uint32_t mask, double v) { coeff_[mask] = v; }

  /// Coefficient of dx^0 ^ ... ^ dx^{n-1}; zero unless degree == dim.
  double top_coefficient() const;
  double max_abs() const;

  ExteriorForm wedge(const ExteriorForm& other) const;
  /// k-fold wedge power; power 0 is the constant 1.
  ExteriorForm power(int k) const;

 private:
  int dim_;
  int degree_;
  std::vector<double> coeff_;
};

struct WedgeMagnitude {
  bool is_nonzero = false;
  double magnitude = 0.0;
};

/// Wedges the given (form, power) factors and reads the top-degree
/// coefficient against the coordinate volume element. Throws DegreeMismatch
/// unless the total degree equals the dimension.
WedgeMagnitude wedge_power_nonzero(const std::vector<std::pair<ExteriorForm, int>>& factors,
                                   double tol = 1e-10);

/// Components (da)_ij = d_i a_j - d_j a_i.
Matrix exterior_derivative_components(const FormJet& alpha);
Matrix exterior_derivative_1form(const ChartedManifold& m, const std::string& alpha,
                                 std::span<const double> x);

/// d(da) for a named one-form, using second derivatives of its components.
ExteriorForm exterior_derivative_twice(const ChartedManifold& m, const std::string& alpha,
                                       std::span<const double> x);

}  // namespace cpc
