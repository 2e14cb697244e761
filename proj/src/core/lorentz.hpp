#pragma once

// Vector algebra of Minkowski 3-space: R^3 with the flat metric of
// signature (-,+,+).

#include <array>
#include <iosfwd>

namespace mannheim {

struct LVec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr LVec3() = default;
  constexpr LVec3(double a, double b, double c) : x1(a), x2(b), x3(c) {}

  constexpr double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
  bool finite() const;

  constexpr LVec3& operator+=(const LVec3& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  constexpr LVec3& operator-=(const LVec3& o) {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  constexpr LVec3& operator*=(double k) {
    x1 *= k; x2 *= k; x3 *= k;
    return *this;
  }
  friend constexpr bool operator==(const LVec3&, const LVec3&) = default;
};

constexpr LVec3 operator+(LVec3 a, const LVec3& b) { return a += b; }
constexpr LVec3 operator-(LVec3 a, const LVec3& b) { return a -= b; }
constexpr LVec3 operator-(const LVec3& a) { return {-a.x1, -a.x2, -a.x3}; }
constexpr LVec3 operator*(double k, LVec3 a) { return a *= k; }
constexpr LVec3 operator*(LVec3 a, double k) { return a *= k; }
constexpr LVec3 operator/(LVec3 a, double k) { return a *= (1.0 / k); }

std::ostream& operator<<(std::ostream& os, const LVec3& v);

enum class CausalClass { Spacelike, Timelike, Null };

const char* to_string(CausalClass c) noexcept;

/// Default relative tolerance for null detection.
inline constexpr double kCausalTol = 1e-9;

/// <x,y> = -x1 y1 + x2 y2 + x3 y3
constexpr double lorentz_dot(const LVec3& x, const LVec3& y) {
  return -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

/// sqrt(|<v,v>|); zero for null and zero vectors.
double lorentz_norm(const LVec3& v);

/// Lorentz vector product (x2y3 - x3y2, x1y3 - x3y1, x2y1 - x1y2).
/// The result is Lorentz-orthogonal to both arguments.
constexpr LVec3 lorentz_cross(const LVec3& x, const LVec3& y) {
  return {x.x2 * y.x3 - x.x3 * y.x2, x.x1 * y.x3 - x.x3 * y.x1, x.x2 * y.x1 - x.x1 * y.x2};
}

/// |a, b, c| := <a x b, c>. Equals minus the Euclidean determinant of the rows.
constexpr double mixed_product(const LVec3& a, const LVec3& b, const LVec3& c) {
  return lorentz_dot(lorentz_cross(a, b), c);
}

double euclidean_norm(const LVec3& v);
double euclidean_norm_sq(const LVec3& v);

/// Null iff |<v,v>| <= tol * max(1, |v|_E^2) and v != 0. The zero vector is spacelike.
CausalClass classify_causal(const LVec3& v, double tol = kCausalTol);

/// Sign of <v,v> as +1/-1 after causal classification; throws NullVector for null input.
int causal_sign(const LVec3& v, double tol = kCausalTol);

/// v / ||v|| for a non-null v; throws NullVector otherwise.
LVec3 lorentz_normalize(const LVec3& v, double tol = kCausalTol);

enum class AngleKind { Hyperbolic, Central, Spacelike, LorentzianTimelike };

const char* to_string(AngleKind k) noexcept;

struct LorentzAngle {
  AngleKind kind;
  double theta;  // always >= 0
};

/// Angle between two non-null vectors, classified by the causal characters of
/// the inputs and, for two spacelike vectors, by the sign of the Gram
/// determinant <x,x><y,y> - <x,y>^2 (negative: timelike span).
/// Throws NullVector, InvalidArgument (opposite time orientation, degenerate span)
/// or Domain (cosine outside [-1,1] beyond tolerance).
LorentzAngle lorentz_angle(const LVec3& x, const LVec3& y, double tol = kCausalTol);

enum class SphereMembership { OnS12, OnH02, Neither };

const char* to_string(SphereMembership m) noexcept;

/// Membership in the Lorentzian sphere <v,v> = r^2 or the hyperbolic sphere <v,v> = -r^2.
SphereMembership sphere_membership(const LVec3& v, double r, double tol);

/// Euclidean sine of the angle between two non-zero vectors; 0 means parallel.
double parallel_sine(const LVec3& u, const LVec3& v);

}  // namespace mannheim
