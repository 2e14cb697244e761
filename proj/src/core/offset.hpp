#pragma once

// Mannheim offsets phi*(s, v) = c(s) + R(s) a(s) + v q*(s) of timelike ruled
// surfaces, with h* = a.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expr.hpp"
#include "ruled.hpp"

namespace mannheim {

enum class OffsetPairing {
  M1mToM1p,  // eq11: hyperbolic rotation, spacelike ruling
  M1mToM1m,  // eq12
  M1pToM2p,  // eq13: circular rotation
};

/// "eq11", "eq12", "eq13".
const char* pairing_name(OffsetPairing p) noexcept;
std::optional<OffsetPairing> parse_pairing(std::string_view text);
SurfaceTag pairing_base_type(OffsetPairing p);
SurfaceTag pairing_target_type(OffsetPairing p);

struct OffsetFrame {
  LVec3 q, h, a;
};

/// Rotated frame (q*, h*, a*) with h* = a. Throws PairingMismatch when the
/// sample's type is not the pairing's base type.
OffsetFrame offset_frame(const FrameSample& f, double theta, OffsetPairing p);

struct OffsetSpec {
  SurfacePtr base;
  Expr R = Expr::number(0.0);
  std::optional<Expr> theta;  // nullopt: solve the developability equation pointwise
  OffsetPairing pairing = OffsetPairing::M1mToM1p;
};

struct Offset {
  OffsetSpec spec;
  std::shared_ptr<const FunctionSurface> surface;
  std::vector<Interval> excluded;  // no real theta (pointwise solve only)
};

/// Theta at s: the explicit expression, or the principal root of the
/// pairing's developability equation.
double offset_theta(const OffsetSpec& spec, double s);
/// Symbolic derivative of theta, or implicit differentiation of the solved root.
double offset_theta_rate(const OffsetSpec& spec, double s);

Offset build_offset(const OffsetSpec& spec);

struct MannheimCheck {
  bool ok = false;
  double max_deviation = 0.0;  // Euclidean |h* - sign a|
  int sign = 1;
};

/// h* of `offset` (intrinsic) against a of `base` with one global sign.
MannheimCheck mannheim_condition_check(const RuledSurface& base, const RuledSurface& offset, double tol,
                                       int samples = 0);

/// eps2 eps3 ||dq/ds|| d_phi + dR/ds: zero iff c + R a is the striction curve of phi*.
double striction_offset_residual(const OffsetSpec& spec, double s);

/// Residual of the developability equation of the pairing, X = R kappa ds1/ds:
/// eq11 cosh t + X sinh t, eq12 sinh t + X cosh t, eq13 sin t - X cos t.
double developability_residual(OffsetPairing p, double theta, double R, double kappa, double ds1_ds);

/// Principal root of developability_residual; throws NoRealSolution when the
/// hyperbolic branches have no real root.
double solve_theta(OffsetPairing p, double R, double kappa, double ds1_ds);

/// dtheta/ds + ds1/ds.
double theta_evolution_residual(const OffsetSpec& spec, double s);

/// dkappa/ds + (R^2 kappa^2 sigma^2 -+ 1)/R + kappa sigma'/sigma with - for an
/// M1- base and + for an M1+ base. Requires R != 0, a developable base at s and
/// a unit-speed striction curve at s.
double characterization_residual(const RuledSurface& base, double R, double s, SurfaceTag variant);

struct TrajectoryFrames {
  OffsetFrame h_traj;  // surface generated by h* along c*
  OffsetFrame a_traj;  // surface generated by a*
};

/// Closed-form frames of the trajectory surfaces, signs fixed so that
/// <h1*, h> > 0 and h2* = a.
TrajectoryFrames trajectory_frames(const OffsetSpec& spec, double s);

struct TrajectoryDralls {
  double p_h = 0.0;
  double p_a = 0.0;
};

/// Closed-form dralls of the h*- and a*-trajectory surfaces. Throws
/// DivisionByZero naming the vanishing denominator.
TrajectoryDralls trajectory_dralls(const OffsetSpec& spec, double s);

/// The two trajectory surfaces c* + v h* and c* + v a*.
std::shared_ptr<const FunctionSurface> h_trajectory_surface(const OffsetSpec& spec);
std::shared_ptr<const FunctionSurface> a_trajectory_surface(const OffsetSpec& spec);

struct TrajectoryReport {
  std::vector<double> s;
  std::vector<double> p_h_star;  // closed form
  std::vector<double> p_a_star;
  double max_p_h_error = 0.0;  // closed form vs numeric drall, relative to max(1, |p|)
  double max_p_a_error = 0.0;
  double max_bertrand_sine = 0.0;  // h1* vs h
  double max_mannheim_sine = 0.0;  // h2* vs a
  bool bertrand_ok = false;
  bool mannheim_ok = false;
};

TrajectoryReport trajectory_report(const OffsetSpec& spec, const std::vector<double>& grid,
                                   double parallel_tol = 1e-8);

}  // namespace mannheim
