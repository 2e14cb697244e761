#include "lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "error.hpp"

namespace mannheim {

bool LVec3::finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }

std::ostream& operator<<(std::ostream& os, const LVec3& v) {
  return os << "(" << v.x1 << ", " << v.x2 << ", " << v.x3 << ")";
}

const char* to_string(CausalClass c) noexcept {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Null: return "null";
  }
  return "?";
}

const char* to_string(AngleKind k) noexcept {
  switch (k) {
    case AngleKind::Hyperbolic: return "hyperbolic";
    case AngleKind::Central: return "central";
    case AngleKind::Spacelike: return "spacelike";
    case AngleKind::LorentzianTimelike: return "lorentzian-timelike";
  }
  return "?";
}

const char* to_string(SphereMembership m) noexcept {
  switch (m) {
    case SphereMembership::OnS12: return "S1^2";
    case SphereMembership::OnH02: return "H0^2";
    case SphereMembership::Neither: return "neither";
  }
  return "?";
}

double lorentz_norm(const LVec3& v) { return std::sqrt(std::abs(lorentz_dot(v, v))); }

double euclidean_norm_sq(const LVec3& v) { return v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3; }

double euclidean_norm(const LVec3& v) { return std::sqrt(euclidean_norm_sq(v)); }

CausalClass classify_causal(const LVec3& v, double tol) {
  if (tol < 0.0) throw Error(ErrorKind::InvalidArgument, "causal tolerance must be non-negative");
  const double e2 = euclidean_norm_sq(v);
  if (e2 == 0.0) return CausalClass::Spacelike;
  const double g = lorentz_dot(v, v);
  if (std::abs(g) <= tol * std::max(1.0, e2)) return CausalClass::Null;
  return g > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

int causal_sign(const LVec3& v, double tol) {
  switch (classify_causal(v, tol)) {
    case CausalClass::Spacelike:
      if (euclidean_norm_sq(v) == 0.0) throw Error(ErrorKind::NullVector, "zero vector has no causal sign");
      return 1;
    case CausalClass::Timelike: return -1;
    case CausalClass::Null: break;
  }
  throw Error(ErrorKind::NullVector, "vector is null (lightlike)");
}

LVec3 lorentz_normalize(const LVec3& v, double tol) {
  causal_sign(v, tol);
  return v / lorentz_norm(v);
}

LorentzAngle lorentz_angle(const LVec3& x, const LVec3& y, double tol) {
  const CausalClass cx = classify_causal(x, tol);
  const CausalClass cy = classify_causal(y, tol);
  if (cx == CausalClass::Null || cy == CausalClass::Null || euclidean_norm_sq(x) == 0.0 ||
      euclidean_norm_sq(y) == 0.0)
    throw Error(ErrorKind::NullVector, "angle undefined for null or zero vectors");

  const double xy = lorentz_dot(x, y);
  const double nx = lorentz_norm(x);
  const double ny = lorentz_norm(y);
  const double ratio = std::abs(xy) / (nx * ny);

  if (cx == CausalClass::Timelike && cy == CausalClass::Timelike) {
    if ((x.x1 > 0.0) != (y.x1 > 0.0))
      throw Error(ErrorKind::InvalidArgument, "hyperbolic angle needs equal time orientation");
    // <x,y> = -|x||y| cosh(theta); reverse Cauchy-Schwarz gives -<x,y> >= |x||y|.
    const double c = -xy / (nx * ny);
    if (c < 1.0 - 1e-12) throw Error(ErrorKind::Domain, "cosh argument below 1");
    return {AngleKind::Hyperbolic, std::acosh(std::max(1.0, c))};
  }

  if (cx == CausalClass::Spacelike && cy == CausalClass::Spacelike) {
    const double gram = lorentz_dot(x, x) * lorentz_dot(y, y) - xy * xy;
    const double scale = euclidean_norm_sq(x) * euclidean_norm_sq(y);
    if (std::abs(gram) <= tol * scale)
      throw Error(ErrorKind::InvalidArgument, "spacelike pair spans a degenerate (null) plane");
    if (gram < 0.0) return {AngleKind::Central, std::acosh(std::max(1.0, ratio))};
    if (ratio > 1.0 + 1e-12) throw Error(ErrorKind::Domain, "cosine argument outside [-1,1]");
    return {AngleKind::Spacelike, std::acos(std::min(1.0, ratio))};
  }

  return {AngleKind::LorentzianTimelike, std::asinh(ratio)};
}

SphereMembership sphere_membership(const LVec3& v, double r, double tol) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "sphere radius must be positive");
  if (tol < 0.0) throw Error(ErrorKind::InvalidArgument, "tolerance must be non-negative");
  const double g = lorentz_dot(v, v);
  if (std::abs(g - r * r) <= tol) return SphereMembership::OnS12;
  if (std::abs(g + r * r) <= tol) return SphereMembership::OnH02;
  return SphereMembership::Neither;
}

double parallel_sine(const LVec3& u, const LVec3& v) {
  const LVec3 c{u.x2 * v.x3 - u.x3 * v.x2, u.x3 * v.x1 - u.x1 * v.x3, u.x1 * v.x2 - u.x2 * v.x1};
  const double nu = euclidean_norm(u);
  const double nv = euclidean_norm(v);
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorKind::InvalidArgument, "parallelism of a zero vector");
  return euclidean_norm(c) / (nu * nv);
}

}  // namespace mannheim
