#include "cpc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "cpc/errors.hpp"

namespace cpc {

namespace {

ExprNodePtr make(ConstantNode n) { return std::make_shared<const ExprNode>(ExprNode{n}); }
ExprNodePtr make(VariableNode n) { return std::make_shared<const ExprNode>(ExprNode{n}); }
ExprNodePtr make(UnaryNode n) { return std::make_shared<const ExprNode>(ExprNode{std::move(n)}); }
ExprNodePtr make(BinaryNode n) { return std::make_shared<const ExprNode>(ExprNode{std::move(n)}); }
ExprNodePtr make(PowerNode n) { return std::make_shared<const ExprNode>(ExprNode{std::move(n)}); }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::kNeg: return "-";
    case UnaryOp::kSin: return "sin";
    case UnaryOp::kCos: return "cos";
    case UnaryOp::kExp: return "exp";
    case UnaryOp::kSqrt: return "sqrt";
    case UnaryOp::kLog: return "log";
  }
  return "?";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return '+';
    case BinaryOp::kSub: return '-';
    case BinaryOp::kMul: return '*';
    case BinaryOp::kDiv: return '/';
  }
  return '?';
}

void print(const ExprNode& node, std::string& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          if (n.value < 0 || (n.value == 0 && std::signbit(n.value))) {
            out += '(';
            out += format_number(n.value);
            out += ')';
          } else {
            out += format_number(n.value);
          }
        } else if constexpr (std::is_same_v<T, VariableNode>) {
          out += 'x';
          out += std::to_string(n.index);
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          if (n.op == UnaryOp::kNeg) {
            out += "(-(";
            print(*n.arg, out);
            out += "))";
          } else {
            out += unary_name(n.op);
            out += '(';
            print(*n.arg, out);
            out += ')';
          }
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          out += '(';
          print(*n.lhs, out);
          out += ' ';
          out += binary_symbol(n.op);
          out += ' ';
          print(*n.rhs, out);
          out += ')';
        } else {
          out += '(';
          print(*n.base, out);
          out += '^';
          if (n.exponent < 0) {
            out += '(' + format_number(n.exponent) + ')';
          } else {
            out += format_number(n.exponent);
          }
          out += ')';
        }
      },
      node.data);
}

std::string text_of(const ExprNode& node) {
  std::string out;
  print(node, out);
  return out;
}

double value_of(const ExprNode& node, std::span<const double> x) {
  return std::visit(
      [x, &node](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, VariableNode>) {
          return x[static_cast<std::size_t>(n.index)];
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          const double u = value_of(*n.arg, x);
          switch (n.op) {
            case UnaryOp::kNeg: return -u;
            case UnaryOp::kSin: return std::sin(u);
            case UnaryOp::kCos: return std::cos(u);
            case UnaryOp::kExp: return std::exp(u);
            case UnaryOp::kSqrt:
              if (u < 0.0) throw DomainError("sqrt of a negative value", text_of(node));
              return std::sqrt(u);
            case UnaryOp::kLog:
              if (u <= 0.0) throw DomainError("log of a non-positive value", text_of(node));
              return std::log(u);
          }
          return 0.0;
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          const double a = value_of(*n.lhs, x);
          const double b = value_of(*n.rhs, x);
          switch (n.op) {
            case BinaryOp::kAdd: return a + b;
            case BinaryOp::kSub: return a - b;
            case BinaryOp::kMul: return a * b;
            case BinaryOp::kDiv:
              if (b == 0.0) throw DomainError("division by zero", text_of(node));
              return a / b;
          }
          return 0.0;
        } else {
          const double b = value_of(*n.base, x);
          if (b < 0.0 && n.exponent != std::floor(n.exponent))
            throw DomainError("non-integer power of a negative value", text_of(node));
          if (b == 0.0 && n.exponent < 0.0) throw DomainError("singular power at zero", text_of(node));
          return std::pow(b, n.exponent);
        }
      },
      node.data);
}

int max_index(const ExprNode& node) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return -1;
        } else if constexpr (std::is_same_v<T, VariableNode>) {
          return n.index;
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          return max_index(*n.arg);
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          return std::max(max_index(*n.lhs), max_index(*n.rhs));
        } else {
          return max_index(*n.base);
        }
      },
      node.data);
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
  if (&a == &b) return true;
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&b](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return n.value == m.value;
        } else if constexpr (std::is_same_v<T, VariableNode>) {
          return n.index == m.index;
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          return n.op == m.op && equal_nodes(*n.arg, *m.arg);
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          return n.op == m.op && equal_nodes(*n.lhs, *m.lhs) && equal_nodes(*n.rhs, *m.rhs);
        } else {
          return n.exponent == m.exponent && equal_nodes(*n.base, *m.base);
        }
      },
      a.data);
}

// ---------------------------------------------------------------------------
// Tokenizer and recursive-descent parser.

enum class TokenKind { kNumber, kIdent, kOp, kLParen, kRParen, kEnd };

struct Token {
  TokenKind kind;
  std::size_t pos;
  std::string text;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      // Exponent part only when a digit follows, so "2e" stays "2" "e".
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
      }
      std::string text(s.substr(start, i - start));
      if (text == ".") throw SyntaxError(start, "malformed number");
      tokens.push_back({TokenKind::kNumber, start, text, std::strtod(text.c_str(), nullptr)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        ++i;
      }
      tokens.push_back({TokenKind::kIdent, start, std::string(s.substr(start, i - start))});
      continue;
    }
    switch (c) {
      case '+':
      case '-':
      case '*':
      case '/':
      case '^':
        tokens.push_back({TokenKind::kOp, i, std::string(1, c)});
        break;
      case '(':
        tokens.push_back({TokenKind::kLParen, i, "("});
        break;
      case ')':
        tokens.push_back({TokenKind::kRParen, i, ")"});
        break;
      default:
        throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
    ++i;
  }
  tokens.push_back({TokenKind::kEnd, s.size(), ""});
  return tokens;
}

class Parser {
 public:
  Parser(std::string_view text, int dim) : tokens_(tokenize(text)), dim_(dim) {}

  ExprNodePtr parse_all() {
    if (peek().kind == TokenKind::kEnd) throw SyntaxError(0, "empty expression");
    ExprNodePtr e = parse_sum();
    if (peek().kind != TokenKind::kEnd) {
      throw SyntaxError(peek().pos, "unexpected '" + peek().text + "'");
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_++]; }
  bool peek_op(char op) const {
    return peek().kind == TokenKind::kOp && peek().text[0] == op;
  }

  // Missing operand: at end of input, blame the token that wanted it.
  [[noreturn]] void fail_operand() const {
    const Token& t = peek();
    if (t.kind == TokenKind::kEnd) {
      const std::size_t where = pos_ > 0 ? tokens_[pos_ - 1].pos : 0;
      throw SyntaxError(where, "expected operand after '" +
                                   (pos_ > 0 ? tokens_[pos_ - 1].text : std::string()) + "'");
    }
    throw SyntaxError(t.pos, "expected operand, found '" + t.text + "'");
  }

  ExprNodePtr parse_sum() {
    ExprNodePtr lhs = parse_product();
    while (peek_op('+') || peek_op('-')) {
      const BinaryOp op = advance().text[0] == '+' ? BinaryOp::kAdd : BinaryOp::kSub;
      ExprNodePtr rhs = parse_product();
      lhs = make(BinaryNode{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprNodePtr parse_product() {
    ExprNodePtr lhs = parse_unary();
    while (peek_op('*') || peek_op('/')) {
      const BinaryOp op = advance().text[0] == '*' ? BinaryOp::kMul : BinaryOp::kDiv;
      ExprNodePtr rhs = parse_unary();
      lhs = make(BinaryNode{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprNodePtr parse_unary() {
    if (peek_op('+')) {
      advance();
      return parse_unary();
    }
    if (peek_op('-')) {
      advance();
      const Token& next = peek();
      const Token& after = peek(1);
      if (next.kind == TokenKind::kNumber &&
          !(after.kind == TokenKind::kOp && after.text[0] == '^')) {
        advance();
        return make(ConstantNode{-next.number});
      }
      return make(UnaryNode{UnaryOp::kNeg, parse_unary()});
    }
    return parse_power();
  }

  ExprNodePtr parse_power() {
    ExprNodePtr base = parse_primary();
    if (!peek_op('^')) return base;
    advance();
    const std::size_t exponent_pos = peek().pos;
    bool negate = false;
    while (peek_op('-') || peek_op('+')) {
      if (advance().text[0] == '-') negate = !negate;
    }
    ExprNodePtr exponent = parse_power();
    if (max_index(*exponent) >= 0) {
      throw SyntaxError(exponent_pos, "exponent must be a constant");
    }
    double c = 0.0;
    try {
      c = value_of(*exponent, {});
    } catch (const DomainError& e) {
      throw SyntaxError(exponent_pos, std::string("exponent: ") + e.what());
    }
    if (negate) c = -c;
    if (!std::isfinite(c)) throw SyntaxError(exponent_pos, "exponent is not finite");
    return make(PowerNode{std::move(base), c});
  }

  ExprNodePtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kNumber:
        advance();
        return make(ConstantNode{t.number});
      case TokenKind::kLParen: {
        advance();
        ExprNodePtr inner = parse_sum();
        if (peek().kind != TokenKind::kRParen) {
          throw SyntaxError(peek().kind == TokenKind::kEnd ? t.pos : peek().pos,
                            "expected ')'");
        }
        advance();
        return inner;
      }
      case TokenKind::kIdent:
        advance();
        return parse_identifier(t);
      default:
        fail_operand();
    }
  }

  ExprNodePtr parse_identifier(const Token& t) {
    const std::string& name = t.text;
    if (name.size() > 1 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      const long k = std::strtol(name.c_str() + 1, nullptr, 10);
      if (k >= dim_ || name.size() > 10) throw IndexOutOfRange(t.pos, static_cast<int>(k), dim_);
      return make(VariableNode{static_cast<int>(k)});
    }
    if (name == "pi") return make(ConstantNode{std::numbers::pi});
    if (name == "e") return make(ConstantNode{std::numbers::e});

    static constexpr std::pair<const char*, UnaryOp> kFunctions[] = {
        {"sin", UnaryOp::kSin}, {"cos", UnaryOp::kCos},   {"exp", UnaryOp::kExp},
        {"sqrt", UnaryOp::kSqrt}, {"log", UnaryOp::kLog},
    };
    for (const auto& [fname, op] : kFunctions) {
      if (name != fname) continue;
      if (peek().kind != TokenKind::kLParen) {
        throw SyntaxError(peek().pos, "expected '(' after function " + name);
      }
      const std::size_t open = advance().pos;
      ExprNodePtr arg = parse_sum();
      if (peek().kind != TokenKind::kRParen) {
        throw SyntaxError(peek().kind == TokenKind::kEnd ? open : peek().pos, "expected ')'");
      }
      advance();
      return make(UnaryNode{op, std::move(arg)});
    }
    throw UnknownSymbol(t.pos, name);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dim_;
};

}  // namespace

Expr::Expr() : root_(make(ConstantNode{0.0})) {}

Expr Expr::constant(double value) { return Expr(make(ConstantNode{value})); }

Expr Expr::variable(int index) { return Expr(make(VariableNode{index})); }

bool Expr::is_constant() const { return std::holds_alternative<ConstantNode>(root_->data); }

double Expr::constant_value() const { return std::get<ConstantNode>(root_->data).value; }

int Expr::max_variable_index() const { return max_index(*root_); }

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expr parse(std::string_view text, int dim) {
  if (dim <= 0) throw Error("parse: dimension must be positive");
  return Expr(Parser(text, dim).parse_all());
}

bool structurally_equal(const Expr& a, const Expr& b) { return equal_nodes(a.node(), b.node()); }

Expr operator+(const Expr& a, const Expr& b) {
  return Expr(make(BinaryNode{BinaryOp::kAdd, a.root(), b.root()}));
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr(make(BinaryNode{BinaryOp::kSub, a.root(), b.root()}));
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr(make(BinaryNode{BinaryOp::kMul, a.root(), b.root()}));
}
Expr operator/(const Expr& a, const Expr& b) {
  return Expr(make(BinaryNode{BinaryOp::kDiv, a.root(), b.root()}));
}
Expr operator-(const Expr& a) { return Expr(make(UnaryNode{UnaryOp::kNeg, a.root()})); }

Expr apply(UnaryOp op, const Expr& arg) { return Expr(make(UnaryNode{op, arg.root()})); }

Expr pow(const Expr& base, double exponent) {
  return Expr(make(PowerNode{base.root(), exponent}));
}

Expr sum_of(const Expr& a, const Expr& b) {
  if (a.is_constant() && a.constant_value() == 0.0) return b;
  if (b.is_constant() && b.constant_value() == 0.0) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  return a + b;
}

Expr product_of(const Expr& a, const Expr& b) {
  if (a.is_constant()) {
    const double c = a.constant_value();
    if (c == 0.0) return Expr::constant(0.0);
    if (c == 1.0) return b;
    if (b.is_constant()) return Expr::constant(c * b.constant_value());
  }
  if (b.is_constant()) {
    const double c = b.constant_value();
    if (c == 0.0) return Expr::constant(0.0);
    if (c == 1.0) return a;
  }
  return a * b;
}

double evaluate(const Expr& e, std::span<const double> point) { return value_of(e.node(), point); }

}  // namespace cpc
