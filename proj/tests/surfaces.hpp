#pragma once

// Closed-form test surfaces shared by the offset tests.

#include <cmath>
#include <memory>
#include <string>

#include "ruled.hpp"

namespace mannheim::testing {

inline SurfacePtr analytic(const std::string& k, const std::string& q, double lo, double hi, int samples = 128) {
  return std::make_shared<const AnalyticSurface>(parse_curve(k, {lo, hi}), parse_curve(q, {lo, hi}), samples);
}

inline SurfacePtr helicoid(double lo = -1, double hi = 1) {
  return analytic("(0,0,s)", "(cosh(s), sinh(s), 0)", lo, hi);
}

// Tangent developable of a unit-speed timelike helix; kappa = coth(1), ds1/ds = sinh(1).
inline SurfacePtr cone_m1minus(double lo = 0, double hi = 2) {
  return analytic("(s*cosh(1), sinh(1)*sin(s), -sinh(1)*cos(s))", "(cosh(1), sinh(1)*cos(s), sinh(1)*sin(s))", lo, hi);
}

// kappa = tanh(1), ds1/ds = cosh(1).
inline SurfacePtr cone_m1plus(double lo = 0, double hi = 2) {
  return analytic("(s*sinh(1), cosh(1)*sin(s), -cosh(1)*cos(s))", "(sinh(1), cosh(1)*cos(s), cosh(1)*sin(s))", lo, hi);
}

inline std::shared_ptr<const SampledFrameSurface> synthesized(SurfaceTag type, const std::string& kappa, Interval dom) {
  FrameRecipe r;
  r.type = type;
  r.kappa = parse_expr(kappa);
  r.domain = dom;
  if (type == SurfaceTag::M1Plus) r.frame0 = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  return integrate_frame(r);
}

}  // namespace mannheim::testing
