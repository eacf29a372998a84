#include "cpc/jet.hpp"

#include <cmath>

#include "cpc/errors.hpp"

namespace cpc {

namespace {

// f(u) with f' = d1, f'' = d2 evaluated at u.value.
Jet2 chain(const Jet2& u, double f, double d1, double d2) {
  const int n = u.dim();
  Jet2 r;
  r.value = f;
  r.grad = d1 * u.grad;
  r.hess.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double h = d1 * u.hess(i, j) + d2 * u.grad(i) * u.grad(j);
      r.hess(i, j) = h;
      r.hess(j, i) = h;
    }
  }
  return r;
}

Jet2 multiply(const Jet2& u, const Jet2& v) {
  const int n = u.dim();
  Jet2 r;
  r.value = u.value * v.value;
  r.grad = v.value * u.grad + u.value * v.grad;
  r.hess.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double h = v.value * u.hess(i, j) + u.value * v.hess(i, j) +
                       (u.grad(i) * v.grad(j) + v.grad(i) * u.grad(j));
      r.hess(i, j) = h;
      r.hess(j, i) = h;
    }
  }
  return r;
}

Jet2 add(const Jet2& u, const Jet2& v, double sign) {
  Jet2 r;
  r.value = u.value + sign * v.value;
  r.grad = u.grad + sign * v.grad;
  r.hess = u.hess + sign * v.hess;
  return r;
}

std::string text_of(const ExprNode& node) {
  return Expr(std::make_shared<const ExprNode>(node)).to_string();
}

bool is_integer(double c) { return std::floor(c) == c; }

Jet2 power(const Jet2& u, double c, const ExprNode& where) {
  const int n = u.dim();
  if (c == 0.0) return Jet2::constant(1.0, n);
  if (c == 1.0) return u;
  const double x = u.value;
  if (x < 0.0 && !is_integer(c)) {
    throw DomainError("non-integer power of a negative value", text_of(where));
  }
  if (x == 0.0 && (c < 0.0 || (!is_integer(c) && c < 2.0))) {
    throw DomainError("singular power at zero", text_of(where));
  }
  if (c == 2.0) return multiply(u, u);
  const double d1 = c * std::pow(x, c - 1.0);
  const double d2 = c * (c - 1.0) * std::pow(x, c - 2.0);
  return chain(u, std::pow(x, c), d1, d2);
}

Jet2 eval(const ExprNode& node, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  return std::visit(
      [&](const auto& e) -> Jet2 {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return Jet2::constant(e.value, n);
        } else if constexpr (std::is_same_v<T, VariableNode>) {
          if (e.index >= n) throw DimensionMismatch("expression uses x" + std::to_string(e.index) + " but point has dimension " + std::to_string(n));
          return Jet2::variable(e.index, x[static_cast<std::size_t>(e.index)], n);
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          Jet2 u = eval(*e.arg, x);
          const double v = u.value;
          switch (e.op) {
            case UnaryOp::kNeg:
              u.value = -u.value;
              u.grad = -u.grad;
              u.hess = -u.hess;
              return u;
            case UnaryOp::kSin:
              return chain(u, std::sin(v), std::cos(v), -std::sin(v));
            case UnaryOp::kCos:
              return chain(u, std::cos(v), -std::sin(v), -std::cos(v));
            case UnaryOp::kExp: {
              const double ev = std::exp(v);
              return chain(u, ev, ev, ev);
            }
            case UnaryOp::kSqrt: {
              if (v <= 0.0) throw DomainError("sqrt of a non-positive value", text_of(node));
              const double s = std::sqrt(v);
              return chain(u, s, 0.5 / s, -0.25 / (s * v));
            }
            case UnaryOp::kLog:
              if (v <= 0.0) throw DomainError("log of a non-positive value", text_of(node));
              return chain(u, std::log(v), 1.0 / v, -1.0 / (v * v));
          }
          return u;
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          const Jet2 a = eval(*e.lhs, x);
          const Jet2 b = eval(*e.rhs, x);
          switch (e.op) {
            case BinaryOp::kAdd: return add(a, b, 1.0);
            case BinaryOp::kSub: return add(a, b, -1.0);
            case BinaryOp::kMul: return multiply(a, b);
            case BinaryOp::kDiv: {
              if (b.value == 0.0) throw DomainError("division by zero", text_of(node));
              const double inv = 1.0 / b.value;
              return multiply(a, chain(b, inv, -inv * inv, 2.0 * inv * inv * inv));
            }
          }
          return a;
        } else {
          return power(eval(*e.base, x), e.exponent, node);
        }
      },
      node.data);
}

}  // namespace

Jet2 Jet2::constant(double value, int dim) {
  Jet2 j;
  j.value = value;
  j.grad = Eigen::VectorXd::Zero(dim);
  j.hess = Eigen::MatrixXd::Zero(dim, dim);
  return j;
}

Jet2 Jet2::variable(int index, double value, int dim) {
  Jet2 j = constant(value, dim);
  j.grad(index) = 1.0;
  return j;
}

Jet2 eval_jet2(const Expr& e, std::span<const double> point) { return eval(e.node(), point); }

}  // namespace cpc
