#include "cpc/forms.hpp"

#include <bit>
#include <cmath>

#include "cpc/errors.hpp"

namespace cpc {

const char* to_string(ExteriorConvention c) {
  return c == ExteriorConvention::kHalf ? "half" : "unit";
}

double pair_two_form(const Matrix& components, const Vector& x, const Vector& y,
                     ExteriorConvention convention) {
  const double full = x.dot(components * y);
  return convention == ExteriorConvention::kHalf ? 0.5 * full : full;
}

ExteriorForm::ExteriorForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim <= 0 || dim > 20) throw DimensionMismatch("exterior forms support dimensions 1..20");
  if (degree < 0) throw DegreeMismatch("negative form degree");
  coeff_.assign(std::size_t{1} << dim, 0.0);
}

ExteriorForm ExteriorForm::one_form(const Vector& components) {
  ExteriorForm f(static_cast<int>(components.size()), 1);
  for (Eigen::Index i = 0; i < components.size(); ++i) f.coeff_[std::size_t{1} << i] = components(i);
  return f;
}

ExteriorForm ExteriorForm::two_form(const Matrix& components) {
  const int n = static_cast<int>(components.rows());
  ExteriorForm f(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) f.coeff_[(std::size_t{1} << i) | (std::size_t{1} << j)] = components(i, j);
  }
  return f;
}

double ExteriorForm::top_coefficient() const {
  if (degree_ != dim_) return 0.0;
  return coeff_.back();
}

double ExteriorForm::max_abs() const {
  double m = 0.0;
  for (double c : coeff_) m = std::max(m, std::abs(c));
  return m;
}

namespace {
// Sign of the shuffle that sorts the concatenation I J into increasing order:
// (-1)^(number of pairs i in I, j in J with i > j).
double shuffle_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const std::uint32_t j = static_cast<std::uint32_t>(std::countr_zero(rest));
    // bits of a strictly above j
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions % 2) ? -1.0 : 1.0;
}
}  // namespace

ExteriorForm ExteriorForm::wedge(const ExteriorForm& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("wedge of forms of different dimension");
  ExteriorForm r(dim_, degree_ + other.degree_);
  if (r.degree_ > dim_) return r;
  const std::uint32_t count = static_cast<std::uint32_t>(coeff_.size());
  for (std::uint32_t a = 0; a < count; ++a) {
    if (coeff_[a] == 0.0 || std::popcount(a) != degree_) continue;
    for (std::uint32_t b = 0; b < count; ++b) {
      if ((a & b) != 0 || other.coeff_[b] == 0.0 || std::popcount(b) != other.degree_) continue;
      r.coeff_[a | b] += shuffle_sign(a, b) * coeff_[a] * other.coeff_[b];
    }
  }
  return r;
}

ExteriorForm ExteriorForm::power(int k) const {
  ExteriorForm r(dim_, 0);
  r.coeff_[0] = 1.0;
  for (int i = 0; i < k; ++i) r = r.wedge(*this);
  return r;
}

WedgeMagnitude wedge_power_nonzero(const std::vector<std::pair<ExteriorForm, int>>& factors, double tol) {
  if (factors.empty()) throw DegreeMismatch("no factors to wedge");
  const int n = factors.front().first.dim();
  int total = 0;
  for (const auto& [form, power] : factors) total += form.degree() * power;
  if (total != n) {
    throw DegreeMismatch("total degree " + std::to_string(total) + " does not match dimension " +
                         std::to_string(n));
  }
  ExteriorForm acc(n, 0);
  acc.set_coefficient(0, 1.0);
  for (const auto& [form, power] : factors) acc = acc.wedge(form.power(power));
  const double m = acc.top_coefficient();
  return {std::abs(m) > tol, m};
}

Matrix exterior_derivative_components(const FormJet& alpha) {
  // jacobian(j, i) = d_i alpha_j, so (da)_ij = jacobian(j, i) - jacobian(i, j).
  return alpha.jacobian.transpose() - alpha.jacobian;
}

Matrix exterior_derivative_1form(const ChartedManifold& m, const std::string& alpha,
                                 std::span<const double> x) {
  return exterior_derivative_components(evaluate_one_form(m, alpha, x));
}

ExteriorForm exterior_derivative_twice(const ChartedManifold& m, const std::string& alpha,
                                       std::span<const double> x) {
  const int n = m.dim();
  const auto jets = eval_components(m.one_form(alpha), x);
  // d_i c_jk = d_i d_j a_k - d_i d_k a_j
  auto dc = [&](int i, int j, int k) {
    return jets[static_cast<std::size_t>(k)].hess(i, j) - jets[static_cast<std::size_t>(j)].hess(i, k);
  };
  ExteriorForm out(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const double v = dc(i, j, k) + dc(j, k, i) + dc(k, i, j);
        out.set_coefficient((1u << i) | (1u << j) | (1u << k), v);
      }
    }
  }
  return out;
}

}  // namespace cpc
