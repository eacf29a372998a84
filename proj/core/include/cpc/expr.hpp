#pragma once

// Closed-form scalar expressions over chart coordinates x0..x{n-1}.
//
// Grammar (precedence from loosest to tightest):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-' | '+'] power)?      exponent must be variable-free
//   primary := number | x<k> | pi | e | func '(' sum ')' | '(' sum ')'
//   func    := sin | cos | exp | sqrt | log
//
// A unary minus applied directly to a numeric literal (not followed by '^')
// folds into a negative constant, so printed ASTs re-parse identically.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace cpc {

enum class UnaryOp { kNeg, kSin, kCos, kExp, kSqrt, kLog };
enum class BinaryOp { kAdd, kSub, kMul, kDiv };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ConstantNode {
  double value;
};
struct VariableNode {
  int index;
};
struct UnaryNode {
  UnaryOp op;
  ExprNodePtr arg;
};
struct BinaryNode {
  BinaryOp op;
  ExprNodePtr lhs;
  ExprNodePtr rhs;
};
struct PowerNode {
  ExprNodePtr base;
  double exponent;
};

struct ExprNode {
  std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode, PowerNode> data;
};

/// Immutable expression handle. Copies share the underlying tree.
class Expr {
 public:
  /// The zero constant.
  Expr();
  explicit Expr(ExprNodePtr root) : root_(std::move(root)) {}

  static Expr constant(double value);
  static Expr variable(int index);

  const ExprNode& node() const { return *root_; }
  const ExprNodePtr& root() const { return root_; }

  bool is_constant() const;
  /// Value of a constant node; only meaningful when is_constant().
  double constant_value() const;
  /// Largest variable index used, or -1 when the expression is constant.
  int max_variable_index() const;

  /// Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

 private:
  ExprNodePtr root_;
};

Expr parse(std::string_view text, int dim);

bool structurally_equal(const Expr& a, const Expr& b);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr apply(UnaryOp op, const Expr& arg);
Expr pow(const Expr& base, double exponent);

/// Builders that skip exact-zero and exact-one constants. Used when composing
/// tensor fields so sparse component arrays stay small.
Expr sum_of(const Expr& a, const Expr& b);
Expr product_of(const Expr& a, const Expr& b);

/// Evaluates the value only (no derivatives).
double evaluate(const Expr& e, std::span<const double> point);

}  // namespace cpc
