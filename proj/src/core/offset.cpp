#include "offset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace mannheim {

namespace {

constexpr double kPoleTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require_base(const OffsetSpec& spec) {
  if (!spec.base) throw Error(ErrorKind::InvalidArgument, "offset needs a base surface");
}

void require_unit_speed_at(const RuledSurface& S, double s) {
  const LVec3 dc = fd_first([&S](double t) { return S.striction_point(t); }, s, S.domain());
  const double dev = std::abs(lorentz_norm(dc) - 1.0);
  if (dev > 1e-6)
    throw Error(ErrorKind::InvalidArgument, "striction curve is not unit speed at s = " + fmt(s) + " (|speed - 1| = " +
                                                fmt(dev) + "); reparametrize by arclength first");
}

LVec3 offset_base_point(const OffsetSpec& spec, double s) {
  return spec.base->striction_point(s) + spec.R.eval(s) * spec.base->frame(s).a;
}

}  // namespace

const char* pairing_name(OffsetPairing p) noexcept {
  switch (p) {
    case OffsetPairing::M1mToM1p: return "eq11";
    case OffsetPairing::M1mToM1m: return "eq12";
    case OffsetPairing::M1pToM2p: return "eq13";
  }
  return "?";
}

std::optional<OffsetPairing> parse_pairing(std::string_view text) {
  if (text == "eq11") return OffsetPairing::M1mToM1p;
  if (text == "eq12") return OffsetPairing::M1mToM1m;
  if (text == "eq13") return OffsetPairing::M1pToM2p;
  return std::nullopt;
}

SurfaceTag pairing_base_type(OffsetPairing p) {
  return p == OffsetPairing::M1pToM2p ? SurfaceTag::M1Plus : SurfaceTag::M1Minus;
}

SurfaceTag pairing_target_type(OffsetPairing p) {
  switch (p) {
    case OffsetPairing::M1mToM1p: return SurfaceTag::M1Plus;
    case OffsetPairing::M1mToM1m: return SurfaceTag::M1Minus;
    case OffsetPairing::M1pToM2p: return SurfaceTag::M2Plus;
  }
  return SurfaceTag::Degenerate;
}

OffsetFrame offset_frame(const FrameSample& f, double t, OffsetPairing p) {
  if (f.type != pairing_base_type(p))
    throw Error(ErrorKind::PairingMismatch, std::string("pairing ") + pairing_name(p) + " needs a " +
                                                short_name(pairing_base_type(p)) + " base, got " + short_name(f.type));
  switch (p) {
    case OffsetPairing::M1mToM1p:
      return {std::sinh(t) * f.q + std::cosh(t) * f.h, f.a, std::cosh(t) * f.q + std::sinh(t) * f.h};
    case OffsetPairing::M1mToM1m:
      return {std::cosh(t) * f.q + std::sinh(t) * f.h, f.a, std::sinh(t) * f.q + std::cosh(t) * f.h};
    case OffsetPairing::M1pToM2p:
      return {std::cos(t) * f.q + std::sin(t) * f.h, f.a, std::sin(t) * f.q - std::cos(t) * f.h};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown pairing");
}

double developability_residual(OffsetPairing p, double t, double R, double kappa, double ds1_ds) {
  const double X = R * kappa * ds1_ds;
  switch (p) {
    case OffsetPairing::M1mToM1p: return std::cosh(t) + X * std::sinh(t);
    case OffsetPairing::M1mToM1m: return std::sinh(t) + X * std::cosh(t);
    case OffsetPairing::M1pToM2p: return std::sin(t) - X * std::cos(t);
  }
  return 0.0;
}

double solve_theta(OffsetPairing p, double R, double kappa, double ds1_ds) {
  const double X = R * kappa * ds1_ds;
  switch (p) {
    case OffsetPairing::M1mToM1p:
      // coth(theta) = -X
      if (!(std::abs(X) > 1.0))
        throw Error(ErrorKind::NoRealSolution, "eq11 developability needs |R kappa ds1/ds| > 1, got " + fmt(X));
      return std::atanh(-1.0 / X);
    case OffsetPairing::M1mToM1m:
      if (!(std::abs(X) < 1.0))
        throw Error(ErrorKind::NoRealSolution, "eq12 developability needs |R kappa ds1/ds| < 1, got " + fmt(X));
      return std::atanh(-X);
    case OffsetPairing::M1pToM2p: return std::atan(X);
  }
  return 0.0;
}

double offset_theta(const OffsetSpec& spec, double s) {
  if (spec.theta) return spec.theta->eval(s);
  require_base(spec);
  const FrameInvariants inv = spec.base->invariants(s);
  return solve_theta(spec.pairing, spec.R.eval(s), inv.kappa, inv.ds1_ds);
}

double offset_theta_rate(const OffsetSpec& spec, double s) {
  if (spec.theta) return differentiate(*spec.theta).eval(s);
  // implicit: dtheta/ds = dtheta/dX * dX/ds with X = R kappa ds1/ds
  require_base(spec);
  const FrameInvariants inv = spec.base->invariants(s);
  const double R = spec.R.eval(s);
  const double X = R * inv.kappa * inv.ds1_ds;
  const double dX = differentiate(spec.R).eval(s) * inv.kappa * inv.ds1_ds +
                    R * (inv.dkappa_ds * inv.ds1_ds + inv.kappa * inv.d2s1_ds2);
  solve_theta(spec.pairing, R, inv.kappa, inv.ds1_ds);  // NoRealSolution outside the branch
  switch (spec.pairing) {
    case OffsetPairing::M1mToM1p: return dX / (X * X - 1.0);
    case OffsetPairing::M1mToM1m: return -dX / (1.0 - X * X);
    case OffsetPairing::M1pToM2p: return dX / (1.0 + X * X);
  }
  return 0.0;
}

Offset build_offset(const OffsetSpec& spec) {
  require_base(spec);
  const SurfaceType type = classify_surface(*spec.base);
  if (type.degenerate()) throw Error(ErrorKind::Degenerate, "base surface is degenerate: " + type.reason);
  if (type.tag != pairing_base_type(spec.pairing))
    throw Error(ErrorKind::PairingMismatch, std::string("pairing ") + pairing_name(spec.pairing) + " needs a " +
                                                short_name(pairing_base_type(spec.pairing)) + " base, got " +
                                                short_name(type.tag));
  Offset out;
  out.spec = spec;
  const std::vector<double> grid = spec.base->domain().grid(spec.base->samples());
  bool in_gap = false;
  double gap_lo = 0.0, gap_hi = 0.0;
  int ok = 0;
  for (double s : grid) {
    const double R = spec.R.eval(s);
    if (!std::isfinite(R)) throw Error(ErrorKind::Domain, "R is not finite at s = " + fmt(s));
    bool solved = true;
    try {
      const double t = offset_theta(spec, s);
      if (!std::isfinite(t)) throw Error(ErrorKind::Domain, "theta is not finite at s = " + fmt(s));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoRealSolution || spec.theta) throw;
      solved = false;
    }
    if (solved) {
      ++ok;
      if (in_gap) out.excluded.push_back({gap_lo, gap_hi});
      in_gap = false;
    } else {
      if (!in_gap) gap_lo = s;
      in_gap = true;
      gap_hi = s;
    }
  }
  if (in_gap) out.excluded.push_back({gap_lo, gap_hi});
  if (ok == 0)
    throw Error(ErrorKind::NoRealSolution, std::string("no real theta solves the ") + pairing_name(spec.pairing) +
                                               " developability equation anywhere on the domain");

  const OffsetSpec sp = spec;
  out.surface = std::make_shared<const FunctionSurface>(
      [sp](double s) { return offset_base_point(sp, s); },
      [sp](double s) { return offset_frame(sp.base->frame(s), offset_theta(sp, s), sp.pairing).q; },
      spec.base->domain(), spec.base->samples());
  return out;
}

MannheimCheck mannheim_condition_check(const RuledSurface& base, const RuledSurface& offset, double tol, int samples) {
  MannheimCheck out;
  bool first = true;
  for (double s : base.domain().grid(samples > 0 ? samples : base.samples())) {
    const LVec3 hs = offset.frame(s).h;
    const LVec3 a = base.frame(s).a;
    if (first) {
      out.sign = (hs.x1 * a.x1 + hs.x2 * a.x2 + hs.x3 * a.x3) >= 0 ? 1 : -1;
      first = false;
    }
    out.max_deviation = std::max(out.max_deviation, euclidean_norm(hs - out.sign * a));
  }
  out.ok = out.max_deviation <= tol;
  return out;
}

double striction_offset_residual(const OffsetSpec& spec, double s) {
  require_base(spec);
  const FrameSample f = spec.base->frame(s);
  const int e3 = -f.eps1 * f.eps2;
  return f.eps2 * e3 * f.ds1_ds * drall(*spec.base, s) + differentiate(spec.R).eval(s);
}

double theta_evolution_residual(const OffsetSpec& spec, double s) {
  require_base(spec);
  return offset_theta_rate(spec, s) + spec.base->invariants(s).ds1_ds;
}

double characterization_residual(const RuledSurface& base, double R, double s, SurfaceTag variant) {
  if (variant != SurfaceTag::M1Minus && variant != SurfaceTag::M1Plus)
    throw Error(ErrorKind::InvalidArgument, "characterization needs an M1- or M1+ base");
  if (R == 0.0 || !std::isfinite(R)) throw Error(ErrorKind::InvalidArgument, "R must be a nonzero constant");
  const double d = drall(base, s);
  if (std::abs(d) > kDevelopabilityTol)
    throw Error(ErrorKind::InvalidArgument, "base is not developable at s = " + fmt(s) + " (drall " + fmt(d) + ")");
  require_unit_speed_at(base, s);
  const FrameInvariants inv = base.invariants(s);
  const double sign = variant == SurfaceTag::M1Minus ? -1.0 : 1.0;
  const double X = R * inv.kappa * inv.ds1_ds;
  return inv.dkappa_ds + (X * X + sign) / R + inv.d2s1_ds2 * inv.kappa / inv.ds1_ds;
}

TrajectoryFrames trajectory_frames(const OffsetSpec& spec, double s) {
  require_base(spec);
  const FrameSample f = spec.base->frame(s);
  const double t = offset_theta(spec, s);
  const OffsetFrame o = offset_frame(f, t, spec.pairing);
  TrajectoryFrames out;
  // h1* = -+h, a1* = -+q; eps1 = +1 for both base types so <h1*, h> > 0 picks h
  out.h_traj = {f.a, f.h, f.q};
  switch (spec.pairing) {
    case OffsetPairing::M1mToM1p:
      out.a_traj = {o.a, f.a, std::sinh(t) * f.q + std::cosh(t) * f.h};
      break;
    case OffsetPairing::M1mToM1m:
      out.a_traj = {o.a, f.a, std::cosh(t) * f.q + std::sinh(t) * f.h};
      break;
    case OffsetPairing::M1pToM2p:
      out.a_traj = {o.a, f.a, std::cos(t) * f.q + std::sin(t) * f.h};
      break;
  }
  return out;
}

TrajectoryDralls trajectory_dralls(const OffsetSpec& spec, double s) {
  require_base(spec);
  const SurfaceTag base_type = pairing_base_type(spec.pairing);
  const FrameSample f = spec.base->frame(s);
  if (f.type != base_type)
    throw Error(ErrorKind::PairingMismatch, std::string("pairing ") + pairing_name(spec.pairing) + " needs a " +
                                                short_name(base_type) + " base");
  require_unit_speed_at(*spec.base, s);
  const FrameInvariants inv = spec.base->invariants(s);
  const double sk = inv.ds1_ds * inv.kappa;
  if (std::abs(sk) <= kPoleTol)
    throw Error(ErrorKind::DivisionByZero,
                "kappa * ds1/ds vanishes at s = " + fmt(s) + " (cylindrical directing cone of the h*-trajectory)");
  const double t = offset_theta(spec, s);
  const double X = spec.R.eval(s) * sk;
  TrajectoryDralls out;
  switch (spec.pairing) {
    case OffsetPairing::M1mToM1p:
      if (std::abs(std::sinh(t)) <= kPoleTol)
        throw Error(ErrorKind::DivisionByZero, "sinh(theta) vanishes at s = " + fmt(s));
      out.p_h = -1.0 / sk;
      out.p_a = -(std::sinh(t) + X * std::cosh(t)) / (sk * std::sinh(t));
      break;
    case OffsetPairing::M1mToM1m:
      out.p_h = -1.0 / sk;
      out.p_a = -(std::cosh(t) + X * std::sinh(t)) / (sk * std::cosh(t));
      break;
    case OffsetPairing::M1pToM2p:
      if (std::abs(std::cos(t)) <= kPoleTol)
        throw Error(ErrorKind::DivisionByZero, "cos(theta) vanishes at s = " + fmt(s));
      out.p_h = 1.0 / sk;
      out.p_a = (std::cos(t) + X * std::sin(t)) / (sk * std::cos(t));
      break;
  }
  return out;
}

std::shared_ptr<const FunctionSurface> h_trajectory_surface(const OffsetSpec& spec) {
  require_base(spec);
  const OffsetSpec sp = spec;
  return std::make_shared<const FunctionSurface>([sp](double s) { return offset_base_point(sp, s); },
                                                 [sp](double s) { return sp.base->frame(s).a; }, spec.base->domain(),
                                                 spec.base->samples());
}

std::shared_ptr<const FunctionSurface> a_trajectory_surface(const OffsetSpec& spec) {
  require_base(spec);
  const OffsetSpec sp = spec;
  return std::make_shared<const FunctionSurface>(
      [sp](double s) { return offset_base_point(sp, s); },
      [sp](double s) { return offset_frame(sp.base->frame(s), offset_theta(sp, s), sp.pairing).a; },
      spec.base->domain(), spec.base->samples());
}

TrajectoryReport trajectory_report(const OffsetSpec& spec, const std::vector<double>& grid, double parallel_tol) {
  const auto ph = h_trajectory_surface(spec);
  const auto pa = a_trajectory_surface(spec);
  TrajectoryReport r;
  for (double s : grid) {
    const TrajectoryDralls d = trajectory_dralls(spec, s);
    const FrameSample f = spec.base->frame(s);
    r.s.push_back(s);
    r.p_h_star.push_back(d.p_h);
    r.p_a_star.push_back(d.p_a);
    const double scale_h = std::max(1.0, std::abs(d.p_h));
    const double scale_a = std::max(1.0, std::abs(d.p_a));
    r.max_p_h_error = std::max(r.max_p_h_error, std::abs(drall(*ph, s) - d.p_h) / scale_h);
    r.max_p_a_error = std::max(r.max_p_a_error, std::abs(drall(*pa, s) - d.p_a) / scale_a);
    r.max_bertrand_sine = std::max(r.max_bertrand_sine, parallel_sine(ph->frame(s).h, f.h));
    r.max_mannheim_sine = std::max(r.max_mannheim_sine, parallel_sine(pa->frame(s).h, f.a));
  }
  r.bertrand_ok = r.max_bertrand_sine <= parallel_tol;
  r.mannheim_ok = r.max_mannheim_sine <= parallel_tol;
  return r;
}

}  // namespace mannheim
