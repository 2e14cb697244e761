#pragma once

// Closed-form expressions in a single real variable `s`.
//
// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := number | 's' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
//   fn     := sin cos tan sinh cosh tanh exp ln sqrt asin acos atan asinh acosh atanh
//
// '^' is right-associative. A unary minus binds tighter than the base of '^',
// so "-s^2" is (-s)^2. A parenthesised list "(a, b, c)" is only valid as a
// curve literal.

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace mannheim {

class Expr {
 public:
  enum class Kind { Number, Var, Const, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Asin, Acos, Atan, Asinh, Acosh, Atanh };
  enum class Constant { Pi, E };

  /// The constant 0.
  Expr();

  static Expr number(double value);
  static Expr var();
  static Expr constant(Constant c);

  // Raw constructors: build exactly the node requested, no folding.
  static Expr make_unary(Kind kind, Expr operand);
  static Expr make_binary(Kind kind, Expr lhs, Expr rhs);
  static Expr make_call(Func fn, Expr arg);

  // Folding constructors used by the differentiator.
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  static Expr pow(const Expr& base, const Expr& exponent);
  static Expr call(Func fn, const Expr& arg);

  Kind kind() const;
  double number_value() const;  // Number nodes only
  Constant constant_kind() const;
  Func func() const;
  const Expr& lhs() const;  // unary operand, call argument, or binary lhs
  const Expr& rhs() const;

  bool is_number(double v) const;
  bool depends_on_s() const;
  std::size_t node_count() const;

  /// Value at s. Throws Error(Domain) when any subexpression leaves the real
  /// domain of its operation or becomes non-finite.
  double eval(double s) const;

  /// Text form accepted by parse_expr, numbers printed with 17 significant digits.
  std::string to_string() const;

 private:
  struct Node;
  struct NullTag {};
  explicit Expr(NullTag) {}
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

const char* function_name(Expr::Func fn) noexcept;

/// Parse a scalar expression. Throws ParseError with byte offset and expected tokens.
Expr parse_expr(std::string_view text);

/// Parse "(e1, e2, e3)" into three expressions. Throws ParseError on syntax
/// errors and on a component count other than three.
std::array<Expr, 3> parse_curve_components(std::string_view text);

/// Symbolic d/ds, with constant folding.
Expr differentiate(const Expr& e);

}  // namespace mannheim
