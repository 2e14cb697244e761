#pragma once

#include <array>
#include <string_view>

#include "expr.hpp"
#include "lorentz.hpp"
#include "numeric.hpp"

namespace mannheim {

/// Highest derivative order any geometric formula here needs.
inline constexpr int kMaxCurveOrder = 4;

/// A parametrised curve s -> (c1(s), c2(s), c3(s)) on a closed interval, with
/// symbolic derivatives precomputed up to kMaxCurveOrder.
class CurveDef {
 public:
  CurveDef(std::array<Expr, 3> components, Interval domain);

  const std::array<Expr, 3>& components() const { return derivs_[0]; }
  const Interval& domain() const { return domain_; }
  CurveDef with_domain(Interval domain) const;

  /// Component-wise value of the order-th derivative at s. Throws Domain for
  /// s outside the domain or a non-finite evaluation.
  LVec3 eval(int order, double s) const;

  std::string to_string() const;

 private:
  std::array<std::array<Expr, 3>, kMaxCurveOrder + 1> derivs_;
  Interval domain_;
};

/// Parse "(e1, e2, e3)" and attach a domain.
CurveDef parse_curve(std::string_view text, Interval domain);

inline LVec3 eval_curve(const CurveDef& c, int order, double s) { return c.eval(order, s); }

/// Lorentzian length of c over [s0, s1] by adaptive Simpson (abs. tol 1e-10).
/// Throws NullVector if a sampled tangent is null, Convergence on quadrature failure.
double arclength(const CurveDef& c, double s0, double s1);

/// Same for an arbitrary velocity field v(s) = dc/ds.
double arclength(const VectorFn& velocity, double s0, double s1);

}  // namespace mannheim
