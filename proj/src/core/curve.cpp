#include "curve.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace mannheim {

CurveDef::CurveDef(std::array<Expr, 3> components, Interval domain) : domain_(domain) {
  if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
    throw Error(ErrorKind::InvalidArgument, "curve domain must be a finite interval with s_min < s_max");
  derivs_[0] = std::move(components);
  for (int k = 1; k <= kMaxCurveOrder; ++k)
    for (int i = 0; i < 3; ++i) derivs_[k][i] = differentiate(derivs_[k - 1][i]);
}

CurveDef CurveDef::with_domain(Interval domain) const { return CurveDef(derivs_[0], domain); }

LVec3 CurveDef::eval(int order, double s) const {
  if (order < 0 || order > kMaxCurveOrder)
    throw Error(ErrorKind::InvalidArgument, "derivative order must be in [0, 4]");
  const double slack = 1e-12 * (1.0 + std::abs(s));
  if (!domain_.contains(s, slack)) {
    std::ostringstream os;
    os.precision(17);
    os << "s = " << s << " outside curve domain [" << domain_.lo << ", " << domain_.hi << "]";
    throw Error(ErrorKind::Domain, os.str());
  }
  const auto& d = derivs_[order];
  return {d[0].eval(s), d[1].eval(s), d[2].eval(s)};
}

std::string CurveDef::to_string() const {
  return "(" + derivs_[0][0].to_string() + ", " + derivs_[0][1].to_string() + ", " + derivs_[0][2].to_string() +
         ")";
}

CurveDef parse_curve(std::string_view text, Interval domain) {
  return CurveDef(parse_curve_components(text), domain);
}

double arclength(const VectorFn& velocity, double s0, double s1) {
  constexpr int kProbe = 65;
  const double lo = std::min(s0, s1), hi = std::max(s0, s1);
  for (int i = 0; i < kProbe; ++i) {
    const double s = lo + (hi - lo) * i / (kProbe - 1);
    const LVec3 v = velocity(s);
    if (classify_causal(v) == CausalClass::Null || euclidean_norm_sq(v) == 0.0) {
      std::ostringstream os;
      os << "null tangent at s = " << s;
      throw Error(ErrorKind::NullVector, os.str());
    }
  }
  return adaptive_simpson([&](double s) { return lorentz_norm(velocity(s)); }, s0, s1, 1e-10);
}

double arclength(const CurveDef& c, double s0, double s1) {
  return arclength([&](double s) { return c.eval(1, s); }, s0, s1);
}

}  // namespace mannheim
