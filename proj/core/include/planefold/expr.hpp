#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace planefold {

enum class Op : std::uint8_t {
  Const, Var,
  Add, Sub, Mul, Div, Neg, Pow,
  Sin, Cos, Tan, Exp, Log, Sqrt, Atan2, Abs,
};

struct ExprNode {
  Op op = Op::Const;
  double value = 0.0;  // Const payload
  int var = 0;         // Var payload: 0=x 1=y 2=z
  std::shared_ptr<const ExprNode> a, b;
};

// Immutable expression tree handle over variables x, y, z.
class Expr {
 public:
  Expr() : Expr(0.0) {}
  Expr(double c);  // NOLINT: constants promote implicitly
  static Expr var(int index);

  const ExprNode& node() const { return *node_; }
  std::shared_ptr<const ExprNode> ptr() const { return node_; }

  std::string str() const;               // unparse with minimal parentheses
  bool same_tree(const Expr& o) const;   // structural equality

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
  friend Expr make_unary(Op, const Expr&);
  friend Expr make_binary(Op, const Expr&, const Expr&);
};

Expr make_unary(Op op, const Expr& a);
Expr make_binary(Op op, const Expr& a, const Expr& b);

inline Expr x_var() { return Expr::var(0); }
inline Expr y_var() { return Expr::var(1); }
inline Expr z_var() { return Expr::var(2); }

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);
Expr atan2(const Expr& y, const Expr& x);
Expr abs(const Expr& a);
Expr pow(const Expr& a, const Expr& b);

// Parses one expression. Throws ParseError with a byte offset on bad input.
Expr parse_expression(std::string_view text);

}  // namespace planefold
