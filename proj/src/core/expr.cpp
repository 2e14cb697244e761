#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace mannheim {

struct Expr::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  Constant constant = Constant::Pi;
  Func func = Func::Sin;
  Expr a{NullTag{}};
  Expr b{NullTag{}};
  bool has_s = false;
  std::size_t count = 1;
};

namespace {

struct FuncInfo {
  Expr::Func fn;
  const char* name;
};

constexpr FuncInfo kFunctions[] = {
    {Expr::Func::Sin, "sin"},     {Expr::Func::Cos, "cos"},     {Expr::Func::Tan, "tan"},
    {Expr::Func::Sinh, "sinh"},   {Expr::Func::Cosh, "cosh"},   {Expr::Func::Tanh, "tanh"},
    {Expr::Func::Exp, "exp"},     {Expr::Func::Ln, "ln"},       {Expr::Func::Sqrt, "sqrt"},
    {Expr::Func::Asin, "asin"},   {Expr::Func::Acos, "acos"},   {Expr::Func::Atan, "atan"},
    {Expr::Func::Asinh, "asinh"}, {Expr::Func::Acosh, "acosh"}, {Expr::Func::Atanh, "atanh"},
};

[[noreturn]] void domain_error(const char* what, double s) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at s = " << s;
  throw Error(ErrorKind::Domain, os.str());
}

double apply(Expr::Func fn, double x, double s) {
  using F = Expr::Func;
  switch (fn) {
    case F::Sin: return std::sin(x);
    case F::Cos: return std::cos(x);
    case F::Tan: return std::tan(x);
    case F::Sinh: return std::sinh(x);
    case F::Cosh: return std::cosh(x);
    case F::Tanh: return std::tanh(x);
    case F::Exp: return std::exp(x);
    case F::Ln:
      if (!(x > 0.0)) domain_error("ln of a non-positive value", s);
      return std::log(x);
    case F::Sqrt:
      if (x < 0.0) domain_error("sqrt of a negative value", s);
      return std::sqrt(x);
    case F::Asin:
      if (std::abs(x) > 1.0) domain_error("asin argument outside [-1,1]", s);
      return std::asin(x);
    case F::Acos:
      if (std::abs(x) > 1.0) domain_error("acos argument outside [-1,1]", s);
      return std::acos(x);
    case F::Atan: return std::atan(x);
    case F::Asinh: return std::asinh(x);
    case F::Acosh:
      if (x < 1.0) domain_error("acosh argument below 1", s);
      return std::acosh(x);
    case F::Atanh:
      if (std::abs(x) >= 1.0) domain_error("atanh argument outside (-1,1)", s);
      return std::atanh(x);
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Printing precedence: higher binds tighter. A negative literal prints like a
// unary minus.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Pow: return 3;
    case Expr::Kind::Neg: return 4;
    case Expr::Kind::Number: return std::signbit(e.number_value()) ? 4 : 5;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Number: out += format_number(e.number_value()); return;
    case K::Var: out += 's'; return;
    case K::Const: out += e.constant_kind() == Expr::Constant::Pi ? "pi" : "e"; return;
    case K::Neg:
      out += '-';
      print_child(e.lhs(), 4, out);
      return;
    case K::Add:
    case K::Sub:
      print_child(e.lhs(), 1, out);
      out += e.kind() == K::Add ? " + " : " - ";
      print_child(e.rhs(), 2, out);
      return;
    case K::Mul:
    case K::Div:
      print_child(e.lhs(), 2, out);
      out += e.kind() == K::Mul ? "*" : "/";
      print_child(e.rhs(), 3, out);
      return;
    case K::Pow:
      print_child(e.lhs(), 4, out);
      out += '^';
      print_child(e.rhs(), 3, out);
      return;
    case K::Call:
      out += function_name(e.func());
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
  }
}

}  // namespace

const char* function_name(Expr::Func fn) noexcept {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

Expr::Expr() {
  static const std::shared_ptr<const Node> zero = std::make_shared<Node>();
  node_ = zero;
}

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var() {
  static const Expr v = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->has_s = true;
    return Expr(std::move(n));
  }();
  return v;
}

Expr Expr::constant(Constant c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->constant = c;
  return Expr(std::move(n));
}

Expr Expr::make_unary(Kind kind, Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->has_s = operand.depends_on_s();
  n->count = 1 + operand.node_count();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::make_binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->has_s = lhs.depends_on_s() || rhs.depends_on_s();
  n->count = 1 + lhs.node_count() + rhs.node_count();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::make_call(Func fn, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = fn;
  n->has_s = arg.depends_on_s();
  n->count = 1 + arg.node_count();
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::number_value() const { return node_->value; }
Expr::Constant Expr::constant_kind() const { return node_->constant; }
Expr::Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
bool Expr::depends_on_s() const { return node_->has_s; }
std::size_t Expr::node_count() const { return node_->count; }

bool Expr::is_number(double v) const { return node_->kind == Kind::Number && node_->value == v; }

namespace {

std::optional<double> folded(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.kind() == Expr::Kind::Number && b.kind() == Expr::Kind::Number)
    if (auto v = folded(a.number_value() + b.number_value())) return Expr::number(*v);
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  if (b.kind() == Expr::Kind::Neg) return Expr::make_binary(Expr::Kind::Sub, a, b.lhs());
  return Expr::make_binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.kind() == Expr::Kind::Number && b.kind() == Expr::Kind::Number)
    if (auto v = folded(a.number_value() - b.number_value())) return Expr::number(*v);
  if (b.is_number(0.0)) return a;
  if (a.is_number(0.0)) return -b;
  if (b.kind() == Expr::Kind::Neg) return Expr::make_binary(Expr::Kind::Add, a, b.lhs());
  return Expr::make_binary(Expr::Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.kind() == Expr::Kind::Number && b.kind() == Expr::Kind::Number)
    if (auto v = folded(a.number_value() * b.number_value())) return Expr::number(*v);
  if (a.is_number(0.0) || b.is_number(0.0)) return Expr::number(0.0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  if (a.is_number(-1.0)) return -b;
  if (b.is_number(-1.0)) return -a;
  // Keep numeric coefficients on the left: s*2 -> 2*s.
  if (b.kind() == Expr::Kind::Number && a.kind() != Expr::Kind::Number)
    return Expr::make_binary(Expr::Kind::Mul, b, a);
  return Expr::make_binary(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.kind() == Expr::Kind::Number && b.kind() == Expr::Kind::Number && b.number_value() != 0.0)
    if (auto v = folded(a.number_value() / b.number_value())) return Expr::number(*v);
  if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::number(0.0);
  if (b.is_number(1.0)) return a;
  return Expr::make_binary(Expr::Kind::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.kind() == Expr::Kind::Number) return Expr::number(-a.number_value());
  if (a.kind() == Expr::Kind::Neg) return a.lhs();
  return Expr::make_unary(Expr::Kind::Neg, a);
}

Expr Expr::pow(const Expr& base, const Expr& exponent) {
  if (base.kind() == Kind::Number && exponent.kind() == Kind::Number)
    if (auto v = folded(std::pow(base.number_value(), exponent.number_value()))) return number(*v);
  if (exponent.is_number(1.0)) return base;
  if (exponent.is_number(0.0)) return number(1.0);
  return make_binary(Kind::Pow, base, exponent);
}

Expr Expr::call(Func fn, const Expr& arg) {
  if (arg.kind() == Kind::Number) {
    try {
      if (auto v = folded(apply(fn, arg.number_value(), 0.0))) return number(*v);
    } catch (const Error&) {
      // Leave out-of-domain constants unevaluated; they fail at eval time.
    }
  }
  return make_call(fn, arg);
}

double Expr::eval(double s) const {
  const Node& n = *node_;
  double r = 0.0;
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Var: return s;
    case Kind::Const: return n.constant == Constant::Pi ? std::numbers::pi : std::numbers::e;
    case Kind::Neg: return -n.a.eval(s);
    case Kind::Add: r = n.a.eval(s) + n.b.eval(s); break;
    case Kind::Sub: r = n.a.eval(s) - n.b.eval(s); break;
    case Kind::Mul: r = n.a.eval(s) * n.b.eval(s); break;
    case Kind::Div: {
      const double den = n.b.eval(s);
      if (den == 0.0) domain_error("division by zero", s);
      r = n.a.eval(s) / den;
      break;
    }
    case Kind::Pow: {
      const double base = n.a.eval(s);
      const double ex = n.b.eval(s);
      if (base < 0.0 && ex != std::trunc(ex)) domain_error("negative base with non-integer exponent", s);
      if (base == 0.0 && ex < 0.0) domain_error("zero raised to a negative power", s);
      r = std::pow(base, ex);
      break;
    }
    case Kind::Call: r = apply(n.func, n.a.eval(s), s); break;
  }
  if (!std::isfinite(r)) domain_error("non-finite value", s);
  return r;
}

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_scalar_document() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input", {"operator", "end of input"});
    return e;
  }

  std::vector<Expr> parse_tuple_document(std::size_t& open_offset) {
    skip_ws();
    open_offset = pos_;
    if (!consume('(')) fail("curve must start with '('", {"'('"});
    std::vector<Expr> items = list_tail();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input after curve", {"end of input"});
    return items;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (consume('+'))
        lhs = Expr::make_binary(Expr::Kind::Add, lhs, term());
      else if (consume('-'))
        lhs = Expr::make_binary(Expr::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (consume('*'))
        lhs = Expr::make_binary(Expr::Kind::Mul, lhs, factor());
      else if (consume('/'))
        lhs = Expr::make_binary(Expr::Kind::Div, lhs, factor());
      else
        return lhs;
    }
  }

  Expr factor() {
    Expr base = unary();
    if (consume('^')) return Expr::make_binary(Expr::Kind::Pow, base, factor());
    return base;
  }

  Expr unary() {
    if (consume('-')) return Expr::make_unary(Expr::Kind::Neg, unary());
    return atom();
  }

  // Items after an opening '(' up to and including the closing ')'.
  std::vector<Expr> list_tail() {
    std::vector<Expr> items;
    items.push_back(expr());
    for (;;) {
      if (consume(',')) {
        items.push_back(expr());
        continue;
      }
      if (consume(')')) return items;
      skip_ws();
      fail(pos_ == text_.size() ? "unbalanced parenthesis" : "unexpected token",
           {"')'", "','", "operator"});
    }
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", {"number", "'s'", "'pi'", "'e'", "function", "'('"});
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      std::vector<Expr> items = list_tail();
      if (items.size() != 1)
        throw ParseError("a " + std::to_string(items.size()) + "-tuple is not a scalar expression", open,
                         {"single expression"});
      return items.front();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'", {"number", "'s'", "'pi'", "'e'", "function", "'('"});
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("malformed number", {"digit"});
    }
    // Exponent only when a digit follows, so "2e" is not swallowed.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    return Expr::number(std::strtod(lexeme.c_str(), nullptr));
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "s") return Expr::var();
    if (name == "pi") return Expr::constant(Expr::Constant::Pi);
    if (name == "e") return Expr::constant(Expr::Constant::E);
    for (const auto& f : kFunctions) {
      if (name == f.name) {
        if (!consume('(')) fail(std::string("expected '(' after ") + f.name, {"'('"});
        const std::size_t arg_start = pos_;
        std::vector<Expr> args = list_tail();
        if (args.size() != 1)
          throw ParseError(std::string(f.name) + " takes exactly one argument", arg_start, {"')'"});
        return Expr::make_call(f.fn, args.front());
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start,
                     {"'s'", "'pi'", "'e'", "function name"});
  }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse_scalar_document(); }

std::array<Expr, 3> parse_curve_components(std::string_view text) {
  std::size_t open = 0;
  std::vector<Expr> items = Parser(text).parse_tuple_document(open);
  if (items.size() != 3)
    throw ParseError("curve needs 3 components, got " + std::to_string(items.size()), open, {"3 components"});
  return {items[0], items[1], items[2]};
}

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e) {
  using K = Expr::Kind;
  using F = Expr::Func;
  if (!e.depends_on_s()) return Expr::number(0.0);
  switch (e.kind()) {
    case K::Number:
    case K::Const: return Expr::number(0.0);
    case K::Var: return Expr::number(1.0);
    case K::Neg: return -differentiate(e.lhs());
    case K::Add: return differentiate(e.lhs()) + differentiate(e.rhs());
    case K::Sub: return differentiate(e.lhs()) - differentiate(e.rhs());
    case K::Mul: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      return differentiate(u) * v + u * differentiate(v);
    }
    case K::Div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      if (!v.depends_on_s()) return differentiate(u) / v;
      return (differentiate(u) * v - u * differentiate(v)) / Expr::pow(v, Expr::number(2.0));
    }
    case K::Pow: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      if (!v.depends_on_s()) return v * Expr::pow(u, v - Expr::number(1.0)) * differentiate(u);
      const Expr lnu = Expr::call(F::Ln, u);
      if (!u.depends_on_s()) return e * lnu * differentiate(v);
      return e * (differentiate(v) * lnu + v * differentiate(u) / u);
    }
    case K::Call: {
      const Expr& u = e.lhs();
      const Expr du = differentiate(u);
      const Expr one = Expr::number(1.0);
      const Expr two = Expr::number(2.0);
      auto sq = [&](const Expr& x) { return Expr::pow(x, two); };
      switch (e.func()) {
        case F::Sin: return Expr::call(F::Cos, u) * du;
        case F::Cos: return -(Expr::call(F::Sin, u) * du);
        case F::Tan: return (one + sq(e)) * du;
        case F::Sinh: return Expr::call(F::Cosh, u) * du;
        case F::Cosh: return Expr::call(F::Sinh, u) * du;
        case F::Tanh: return (one - sq(e)) * du;
        case F::Exp: return e * du;
        case F::Ln: return du / u;
        case F::Sqrt: return du / (two * e);
        case F::Asin: return du / Expr::call(F::Sqrt, one - sq(u));
        case F::Acos: return -(du / Expr::call(F::Sqrt, one - sq(u)));
        case F::Atan: return du / (one + sq(u));
        case F::Asinh: return du / Expr::call(F::Sqrt, sq(u) + one);
        case F::Acosh: return du / Expr::call(F::Sqrt, sq(u) - one);
        case F::Atanh: return du / (one - sq(u));
      }
    }
  }
  return Expr::number(0.0);
}

}  // namespace mannheim
