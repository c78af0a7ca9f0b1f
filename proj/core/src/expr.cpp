#include "planefold/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "planefold/types.hpp"

namespace planefold {

Expr::Expr(double c) {
  auto n = std::make_shared<ExprNode>();
  if (c < 0.0) {
    auto inner = std::make_shared<ExprNode>();
    inner->op = Op::Const;
    inner->value = -c;
    n->op = Op::Neg;
    n->a = inner;
  } else {
    n->op = Op::Const;
    n->value = c;
  }
  node_ = n;
}

Expr Expr::var(int index) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->var = index;
  return Expr(std::move(n));
}

Expr make_unary(Op op, const Expr& a) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = a.ptr();
  return Expr(std::move(n));
}

Expr make_binary(Op op, const Expr& a, const Expr& b) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = a.ptr();
  n->b = b.ptr();
  return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return make_binary(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return make_binary(Op::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return make_binary(Op::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return make_binary(Op::Div, a, b); }
Expr operator-(const Expr& a) { return make_unary(Op::Neg, a); }
Expr sin(const Expr& a) { return make_unary(Op::Sin, a); }
Expr cos(const Expr& a) { return make_unary(Op::Cos, a); }
Expr tan(const Expr& a) { return make_unary(Op::Tan, a); }
Expr exp(const Expr& a) { return make_unary(Op::Exp, a); }
Expr log(const Expr& a) { return make_unary(Op::Log, a); }
Expr sqrt(const Expr& a) { return make_unary(Op::Sqrt, a); }
Expr atan2(const Expr& y, const Expr& x) { return make_binary(Op::Atan2, y, x); }
Expr abs(const Expr& a) { return make_unary(Op::Abs, a); }
Expr pow(const Expr& a, const Expr& b) { return make_binary(Op::Pow, a, b); }

bool Expr::same_tree(const Expr& o) const {
  struct Cmp {
    static bool eq(const ExprNode* a, const ExprNode* b) {
      if (a == b) return true;
      if (!a || !b) return false;
      if (a->op != b->op) return false;
      switch (a->op) {
        case Op::Const: return a->value == b->value;
        case Op::Var: return a->var == b->var;
        default: break;
      }
      return eq(a->a.get(), b->a.get()) && eq(a->b.get(), b->b.get());
    }
  };
  return Cmp::eq(node_.get(), o.node_.get());
}

// ---------------- printer ----------------

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Add: case Op::Sub: return 1;
    case Op::Mul: case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;  // atoms and function calls
  }
}

void print_node(const ExprNode* n, std::string& out);

// wraps child in parentheses when its precedence is too low for the slot
void print_child(const ExprNode* c, int min_prec, std::string& out) {
  if (precedence(c->op) < min_prec) {
    out += '(';
    print_node(c, out);
    out += ')';
  } else {
    print_node(c, out);
  }
}

void print_const(double v, std::string& out) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void print_node(const ExprNode* n, std::string& out) {
  switch (n->op) {
    case Op::Const: print_const(n->value, out); return;
    case Op::Var: out += "xyz"[n->var]; return;
    case Op::Add:
      print_child(n->a.get(), 1, out); out += " + "; print_child(n->b.get(), 2, out); return;
    case Op::Sub:
      print_child(n->a.get(), 1, out); out += " - "; print_child(n->b.get(), 2, out); return;
    case Op::Mul:
      print_child(n->a.get(), 2, out); out += '*'; print_child(n->b.get(), 3, out); return;
    case Op::Div:
      print_child(n->a.get(), 2, out); out += '/'; print_child(n->b.get(), 3, out); return;
    case Op::Neg:
      out += '-'; print_child(n->a.get(), 3, out); return;
    case Op::Pow:
      print_child(n->a.get(), 5, out); out += '^'; print_child(n->b.get(), 3, out); return;
    case Op::Sin: out += "sin("; break;
    case Op::Cos: out += "cos("; break;
    case Op::Tan: out += "tan("; break;
    case Op::Exp: out += "exp("; break;
    case Op::Log: out += "log("; break;
    case Op::Sqrt: out += "sqrt("; break;
    case Op::Abs: out += "abs("; break;
    case Op::Atan2:
      out += "atan2(";
      print_node(n->a.get(), out);
      out += ", ";
      print_node(n->b.get(), out);
      out += ')';
      return;
    default: break;
  }
  print_node(n->a.get(), out);
  out += ')';
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_node(node_.get(), out);
  return out;
}

// ---------------- parser ----------------
//
// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' unary)?
// atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      char c = peek();
      if (c == '+') { ++pos; lhs = lhs + parse_term(); }
      else if (c == '-') { ++pos; lhs = lhs - parse_term(); }
      else return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      char c = peek();
      if (c == '*') { ++pos; lhs = lhs * parse_unary(); }
      else if (c == '/') { ++pos; lhs = lhs / parse_unary(); }
      else return lhs;
    }
  }

  Expr parse_unary() {
    if (consume('-')) return -parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (consume('^')) return pow(base, parse_unary());
    return base;
  }

  Expr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail("expected a number, identifier or '('");
  }

  Expr parse_number() {
    skip_ws();
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    double value = 0.0;
    auto [next, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("malformed number");
    pos += static_cast<std::size_t>(next - begin);
    return Expr(value);
  }

  Expr parse_ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name(text.substr(start, pos - start));
    if (name == "x") return Expr::var(0);
    if (name == "y") return Expr::var(1);
    if (name == "z") return Expr::var(2);

    static const std::map<std::string, std::pair<Op, int>> funcs = {
        {"sin", {Op::Sin, 1}}, {"cos", {Op::Cos, 1}}, {"tan", {Op::Tan, 1}},
        {"exp", {Op::Exp, 1}}, {"log", {Op::Log, 1}}, {"sqrt", {Op::Sqrt, 1}},
        {"abs", {Op::Abs, 1}}, {"atan2", {Op::Atan2, 2}},
    };
    auto it = funcs.find(name);
    if (it == funcs.end()) {
      pos = start;
      fail("unknown identifier '" + name + "'");
    }
    if (!consume('(')) fail("expected '(' after '" + name + "'");
    std::vector<Expr> args;
    args.push_back(parse_expr());
    while (consume(',')) args.push_back(parse_expr());
    if (!consume(')')) fail("expected ')' closing '" + name + "'");
    int arity = it->second.second;
    if (static_cast<int>(args.size()) != arity) {
      pos = start;
      fail("'" + name + "' expects " + std::to_string(arity) + " argument(s), got " +
           std::to_string(args.size()));
    }
    if (arity == 1) return make_unary(it->second.first, args[0]);
    return make_binary(it->second.first, args[0], args[1]);
  }
};

}  // namespace

Expr parse_expression(std::string_view text) {
  Parser p{text};
  Expr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return e;
}

}  // namespace planefold
