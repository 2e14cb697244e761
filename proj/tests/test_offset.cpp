#include <gtest/gtest.h>

#include <cmath>

#include "error.hpp"
#include "offset.hpp"
#include "prop.hpp"
#include "surfaces.hpp"

using namespace mannheim;
using namespace mannheim::testing;

namespace {

const double kCa = std::cosh(1.0), kSa = std::sinh(1.0);

void expect_vec(const LVec3& got, const LVec3& want, double tol) {
  EXPECT_NEAR(got.x1, want.x1, tol);
  EXPECT_NEAR(got.x2, want.x2, tol);
  EXPECT_NEAR(got.x3, want.x3, tol);
}

FrameSample seed_frame(SurfaceTag t) {
  FrameSample f;
  f.type = t;
  if (t == SurfaceTag::M1Minus) {
    f.q = {1, 0, 0}, f.h = {0, 1, 0}, f.a = {0, 0, 1};
  } else {
    f.q = {0, 1, 0}, f.h = {0, 0, 1}, f.a = {1, 0, 0};
  }
  f.eps1 = eps1_of(t);
  f.eps2 = eps2_of(t);
  return f;
}

// Mannheim-compatible angle on the timelike cone: dtheta/ds = -ds1/ds.
OffsetSpec cone_spec(OffsetPairing p, double R, double theta0, double hi = 2) {
  OffsetSpec sp;
  const bool plus = p == OffsetPairing::M1pToM2p;
  sp.base = plus ? cone_m1plus(0, hi) : cone_m1minus(0, hi);
  sp.R = Expr::number(R);
  sp.theta = parse_expr(std::to_string(theta0) + " - " + (plus ? "cosh(1)" : "sinh(1)") + "*s");
  sp.pairing = p;
  return sp;
}

}  // namespace

TEST(OffsetFrame, Examples) {
  const FrameSample f = seed_frame(SurfaceTag::M1Minus);
  const OffsetFrame e12 = offset_frame(f, 0, OffsetPairing::M1mToM1m);
  expect_vec(e12.q, f.q, 0);
  expect_vec(e12.h, f.a, 0);
  expect_vec(e12.a, f.h, 0);
  const OffsetFrame e11 = offset_frame(f, 0, OffsetPairing::M1mToM1p);
  expect_vec(e11.q, f.h, 0);
  expect_vec(e11.h, f.a, 0);
  expect_vec(e11.a, f.q, 0);
  EXPECT_THROW(offset_frame(f, 0, OffsetPairing::M1pToM2p), Error);
  EXPECT_THROW(offset_frame(seed_frame(SurfaceTag::M1Plus), 0, OffsetPairing::M1mToM1p), Error);
}

TEST(OffsetFrame, TargetPseudoOrthonormality) {
  Gen g(19);
  const OffsetPairing ps[] = {OffsetPairing::M1mToM1p, OffsetPairing::M1mToM1m, OffsetPairing::M1pToM2p};
  for (OffsetPairing p : ps) {
    const SurfaceTag t = pairing_target_type(p);
    const FrameSample f = seed_frame(pairing_base_type(p));
    for (int i = 0; i < 100; ++i) {
      const double th = g.uniform(-3, 3);
      const OffsetFrame o = offset_frame(f, th, p);
      const double scale = std::cosh(th) * std::cosh(th);
      EXPECT_NEAR(lorentz_dot(o.q, o.q), eps2_of(t), 1e-12 * scale);
      EXPECT_NEAR(lorentz_dot(o.h, o.h), eps1_of(t), 1e-12 * scale);
      EXPECT_NEAR(lorentz_dot(o.a, o.a), eps3_of(t), 1e-12 * scale);
      EXPECT_NEAR(lorentz_dot(o.q, o.h), 0, 1e-12 * scale);
      EXPECT_NEAR(lorentz_dot(o.q, o.a), 0, 1e-12 * scale);
      EXPECT_NEAR(lorentz_dot(o.h, o.a), 0, 1e-12 * scale);
    }
  }
}

TEST(BuildOffset, Examples) {
  OffsetSpec sp;
  sp.base = helicoid();
  sp.R = Expr::number(0);
  sp.theta = Expr::number(0);
  sp.pairing = OffsetPairing::M1mToM1m;
  const Offset o = build_offset(sp);
  for (double s : {-0.5, 0.3}) {
    expect_vec(o.surface->base_point(s), sp.base->base_point(s), 1e-14);
    expect_vec(o.surface->director(s), sp.base->director(s), 1e-14);
  }
  sp.R = Expr::number(1);
  const Offset o1 = build_offset(sp);
  for (double s : {-0.5, 0.3}) expect_vec(o1.surface->base_point(s), {0, 0, s + 1}, 1e-14);
}

TEST(BuildOffset, NonConstantRBreaksStriction) {
  OffsetSpec sp = cone_spec(OffsetPairing::M1mToM1p, 1.0, 0.5);
  sp.R = parse_expr("1 + 0.5*s");
  const Offset o = build_offset(sp);
  double worst = 0;
  for (double s : Interval{0.1, 1.9}.grid(9))
    worst = std::max(worst, std::abs(lorentz_dot(o.surface->director_jet(s, 1).d[1], o.surface->base_velocity(s))));
  EXPECT_GT(worst, 1e-3);
  // constant R keeps c + R a on the striction curve
  const Offset oc = build_offset(cone_spec(OffsetPairing::M1mToM1p, 1.0, 0.5));
  for (double s : Interval{0.1, 1.9}.grid(9))
    EXPECT_NEAR(lorentz_dot(oc.surface->director_jet(s, 1).d[1], oc.surface->base_velocity(s)), 0.0, 1e-8);
}

TEST(BuildOffset, Errors) {
  OffsetSpec sp = cone_spec(OffsetPairing::M1pToM2p, 1.0, 0.5);
  sp.base = cone_m1minus();
  EXPECT_THROW(build_offset(sp), Error);
  OffsetSpec bad = cone_spec(OffsetPairing::M1mToM1p, 1.0, 0.5);
  bad.R = parse_expr("ln(s - 1)");
  EXPECT_THROW(build_offset(bad), Error);
  OffsetSpec none = cone_spec(OffsetPairing::M1mToM1p, 0.1, 0.5);
  none.theta.reset();  // |R kappa ds1/ds| = 0.1 cosh(1) < 1: eq11 has no root
  try {
    build_offset(none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoRealSolution);
  }
  OffsetSpec cyl;
  cyl.base = analytic("(0,0,s)", "(1,0,0)", 0, 1);
  EXPECT_THROW(build_offset(cyl), Error);
}

TEST(BuildOffset, IntrinsicTypeAndCentralNormal) {
  const OffsetPairing ps[] = {OffsetPairing::M1mToM1p, OffsetPairing::M1mToM1m, OffsetPairing::M1pToM2p};
  for (OffsetPairing p : ps) {
    // theta stays inside (0, pi/2 + 0.3) so sinh(theta), sin(theta) keep their sign
    const OffsetSpec sp = cone_spec(p, 0.7, 1.8, 1.0);
    const Offset o = build_offset(sp);
    EXPECT_EQ(classify_surface(*o.surface).tag, pairing_target_type(p)) << pairing_name(p);
    const MannheimCheck m = mannheim_condition_check(*sp.base, *o.surface, 1e-6, 64);
    EXPECT_TRUE(m.ok) << pairing_name(p) << " " << m.max_deviation;
  }
}

TEST(BuildOffset, CentralNormalFlipsWhereRulingVelocityVanishes) {
  // eq12 with theta crossing 0 at s = 0.9 / sinh(1): h* flips from a to -a there
  const OffsetSpec sp = cone_spec(OffsetPairing::M1mToM1m, 0.7, 0.9);
  const Offset o = build_offset(sp);
  const double s0 = 0.9 / kSa;
  EXPECT_GT(lorentz_dot(o.surface->frame(s0 - 0.1).h, sp.base->frame(s0 - 0.1).a), 0.5);
  EXPECT_LT(lorentz_dot(o.surface->frame(s0 + 0.1).h, sp.base->frame(s0 + 0.1).a), -0.5);
  EXPECT_LE(euclidean_norm(o.surface->director_jet(s0, 1).d[1]), 1e-10);
  EXPECT_FALSE(mannheim_condition_check(*sp.base, *o.surface, 1e-6, 64).ok);
}

TEST(MannheimCheck, NegativeCases) {
  const auto base = cone_m1minus();
  EXPECT_FALSE(mannheim_condition_check(*base, *base, 1e-6, 64).ok);
  const auto hel = helicoid();
  const MannheimCheck self = mannheim_condition_check(*hel, *hel, 1e-6, 64);
  EXPECT_FALSE(self.ok);
  EXPECT_GE(self.max_deviation, 1.0);

  const OffsetSpec sp = cone_spec(OffsetPairing::M1mToM1p, 0.7, 0.9);
  const Offset o = build_offset(sp);
  const FunctionSurface perturbed([o](double s) { return o.surface->base_point(s); },
                                  [o, sp](double s) { return o.surface->director(s) + 0.1 * sp.base->frame(s).h; },
                                  sp.base->domain(), 64);
  EXPECT_FALSE(mannheim_condition_check(*base, perturbed, 1e-6, 64).ok);
}

TEST(StrictionOffsetResidual, Examples) {
  OffsetSpec sp;
  sp.base = cone_m1minus();
  sp.R = Expr::number(2.5);
  for (double s : {0.2, 1.1}) EXPECT_NEAR(striction_offset_residual(sp, s), 0.0, 1e-10);
  sp.base = helicoid();
  sp.R = Expr::number(0);
  for (double s : {-0.4, 0.6}) EXPECT_NEAR(striction_offset_residual(sp, s), 1.0, 1e-12);
  sp.R = parse_expr("-s");
  for (double s : {-0.4, 0.6}) EXPECT_NEAR(striction_offset_residual(sp, s), 0.0, 1e-12);
}

TEST(StrictionOffsetResidual, MatchesDirectProjection) {
  // independent check of the sign: <d(c + R a)/ds, a> = 0 iff the residual vanishes
  OffsetSpec sp;
  sp.base = analytic("(0.3*s, 0, s)", "(cosh(s), sinh(s), 0.2*s)", -0.5, 0.5);
  sp.R = parse_expr("0.4*s^2");
  const auto cstar = [&](double t) { return sp.base->striction_point(t) + sp.R.eval(t) * sp.base->frame(t).a; };
  for (double s : {-0.3, 0.0, 0.2}) {
    const FrameSample f = sp.base->frame(s);
    const double direct = lorentz_dot(fd_first(cstar, s, sp.base->domain()), f.a);
    // <c*', a> = eps3 (R' - eps1 sigma d) = eps3 * residual
    EXPECT_NEAR(direct, -f.eps1 * f.eps2 * striction_offset_residual(sp, s), 1e-8);
  }
}

TEST(StrictionOffset, ConstantRIffStrictionBase) {
  OffsetSpec sp;
  sp.base = cone_m1minus();
  sp.R = Expr::number(0.8);
  double worst = 0, worst_dR = 0;
  for (double s : sp.base->domain().grid(64)) {
    worst = std::max(worst, std::abs(striction_offset_residual(sp, s)));
    worst_dR = std::max(worst_dR, std::abs(differentiate(sp.R).eval(s)));
  }
  EXPECT_LE(worst, 1e-8);
  EXPECT_LE(worst_dR, 1e-8);
  sp.R = parse_expr("0.8 + 0.01*s");
  bool any = false;
  for (double s : sp.base->domain().grid(64)) any = any || std::abs(striction_offset_residual(sp, s)) > 1e-8;
  EXPECT_TRUE(any);
}

TEST(Developability, ResidualExamples) {
  EXPECT_NEAR(developability_residual(OffsetPairing::M1mToM1m, 0.7, 1, 0, 1), std::sinh(0.7), 1e-15);
  const double th = 0.8;
  EXPECT_NEAR(developability_residual(OffsetPairing::M1mToM1p, th, 1, -1.0 / std::tanh(th), 1), 0, 1e-14);
  EXPECT_NEAR(developability_residual(OffsetPairing::M1pToM2p, th, 2, std::tan(th) / 2, 1), 0, 1e-14);
}

TEST(SolveTheta, Examples) {
  EXPECT_EQ(solve_theta(OffsetPairing::M1mToM1m, 1, 0, 1), 0.0);
  EXPECT_NEAR(solve_theta(OffsetPairing::M1mToM1p, 1, -2, 1), 0.5 * std::log(3.0), 1e-15);
  try {
    solve_theta(OffsetPairing::M1mToM1p, 1, 0.5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoRealSolution);
  }
  EXPECT_THROW(solve_theta(OffsetPairing::M1mToM1m, 1, 1.5, 1), Error);
}

TEST(SolveTheta, RootsHaveTinyResidual) {
  Gen g(23);
  for (int i = 0; i < 200; ++i) {
    const double R = g.uniform(0.2, 2), k = g.uniform(-3, 3), sg = g.uniform(0.2, 2);
    const double X = R * k * sg;
    for (OffsetPairing p : {OffsetPairing::M1mToM1p, OffsetPairing::M1mToM1m, OffsetPairing::M1pToM2p}) {
      if (p == OffsetPairing::M1mToM1p && std::abs(X) <= 1.01) continue;
      if (p == OffsetPairing::M1mToM1m && std::abs(X) >= 0.99) continue;
      const double th = solve_theta(p, R, k, sg);
      const double scale = std::max(1.0, std::cosh(th));
      EXPECT_LE(std::abs(developability_residual(p, th, R, k, sg)), 1e-12 * scale * std::max(1.0, std::abs(X)));
    }
  }
}

TEST(ThetaEvolution, Examples) {
  OffsetSpec sp;
  sp.base = helicoid();
  sp.theta = parse_expr("0.3 - s");
  EXPECT_NEAR(theta_evolution_residual(sp, 0.2), 0.0, 1e-12);
  sp.theta = Expr::number(1.2);
  EXPECT_NEAR(theta_evolution_residual(sp, 0.2), 1.0, 1e-12);
  // ds1/ds = 1 + s for u(s) = s + s^2/2, so theta = -u
  sp.base = analytic("(0,0,s)", "(cosh(s + s^2/2), sinh(s + s^2/2), 0)", 0, 1);
  sp.theta = parse_expr("-(s + s^2/2)");
  for (double s : {0.1, 0.5, 0.9}) EXPECT_NEAR(theta_evolution_residual(sp, s), 0.0, 1e-10);
}

TEST(Characterization, ConstantKappa) {
  const auto base = cone_m1minus();
  for (double R : {0.5, 1.0, 2.0}) {
    const double want = (R * R * kCa * kCa - 1.0) / R;  // R kappa sigma = R cosh(1)
    EXPECT_NEAR(characterization_residual(*base, R, 0.7, SurfaceTag::M1Minus), want, 1e-7);
  }
  EXPECT_THROW(characterization_residual(*base, 0.0, 0.7, SurfaceTag::M1Minus), Error);
  EXPECT_THROW(characterization_residual(*helicoid(), 1.0, 0.2, SurfaceTag::M1Minus), Error);
  EXPECT_THROW(characterization_residual(*base, 1.0, 0.2, SurfaceTag::M2Plus), Error);
}

TEST(Characterization, CothProfileSatisfiesM1MinusEquation) {
  const double R = 1.0;
  const auto base = synthesized(SurfaceTag::M1Minus, "-1/tanh(3 - s)", {0, 2});
  for (double s : base->knot_grid(512))
    EXPECT_NEAR(characterization_residual(*base, R, s, SurfaceTag::M1Minus), 0.0, 1e-8) << s;
}

TEST(Characterization, TanProfileSatisfiesM1PlusEquation) {
  const double R = 1.0;
  // 0.05 short of the pole at 3 - pi/2; between knots kappa' is only interpolated
  const auto base = synthesized(SurfaceTag::M1Plus, "tan(3 - s)", {0, 3 - M_PI / 2 - 0.05});
  for (double s : base->knot_grid(200))
    EXPECT_NEAR(characterization_residual(*base, R, s, SurfaceTag::M1Plus), 0.0, 1e-8) << s;
  EXPECT_LE(std::abs(characterization_residual(*base, R, 0.5, SurfaceTag::M1Plus)), 1e-8);
  // the opposite variant sign does not vanish
  EXPECT_GT(std::abs(characterization_residual(*base, R, 0.5, SurfaceTag::M1Minus)), 1.0);
}

TEST(TrajectoryDralls, ConeClosedForm) {
  const OffsetSpec sp = cone_spec(OffsetPairing::M1mToM1p, 0.5, 0.9);
  const TrajectoryDralls d = trajectory_dralls(sp, 0.4);
  EXPECT_NEAR(d.p_h, -1.0 / kCa, 1e-10);
  const auto ph = h_trajectory_surface(sp);
  for (double s : Interval{0.1, 1.9}.grid(9)) EXPECT_NEAR(drall(*ph, s), -1.0 / kCa, 1e-6);
}

TEST(TrajectoryDralls, NumeratorIsMirrorDevelopability) {
  const OffsetSpec sp = cone_spec(OffsetPairing::M1mToM1p, 0.5, 0.9);
  for (double s : {0.3, 1.2}) {
    const double th = offset_theta(sp, s);
    const TrajectoryDralls d = trajectory_dralls(sp, s);
    const double mirror = developability_residual(OffsetPairing::M1mToM1m, th, 0.5, 1 / std::tanh(1.0), kSa);
    EXPECT_NEAR(d.p_a, -mirror / (kCa * std::sinh(th)), 1e-10);
  }
}

TEST(TrajectoryDralls, Poles) {
  OffsetSpec sp;
  sp.base = helicoid();
  sp.R = Expr::number(1);
  sp.theta = parse_expr("1 - s");
  try {
    trajectory_dralls(sp, 0.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
    EXPECT_NE(std::string(e.what()).find("kappa"), std::string::npos);
  }
  OffsetSpec s2 = cone_spec(OffsetPairing::M1mToM1p, 0.5, 0.0);
  try {
    trajectory_dralls(s2, 0.0);  // theta = 0
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
}

TEST(TrajectoryFrames, ParallelismAndClosedForm) {
  const OffsetPairing ps[] = {OffsetPairing::M1mToM1p, OffsetPairing::M1mToM1m, OffsetPairing::M1pToM2p};
  for (OffsetPairing p : ps) {
    const OffsetSpec sp = cone_spec(p, 0.6, 1.1);
    const TrajectoryReport r = trajectory_report(sp, Interval{0.05, 1.0}.grid(24));
    EXPECT_TRUE(r.bertrand_ok) << pairing_name(p) << " " << r.max_bertrand_sine;
    EXPECT_TRUE(r.mannheim_ok) << pairing_name(p) << " " << r.max_mannheim_sine;
    EXPECT_LE(r.max_p_h_error, 1e-5) << pairing_name(p);
    EXPECT_LE(r.max_p_a_error, 1e-5) << pairing_name(p);
    for (double s : {0.2, 0.8}) {
      const TrajectoryFrames tf = trajectory_frames(sp, s);
      const FrameSample f = sp.base->frame(s);
      EXPECT_LE(parallel_sine(tf.h_traj.h, f.h), 1e-12);
      EXPECT_LE(parallel_sine(tf.a_traj.h, f.a), 1e-12);
      EXPECT_GT(lorentz_dot(tf.h_traj.h, f.h), 0);
      const auto pa = a_trajectory_surface(sp);
      EXPECT_LE(parallel_sine(pa->frame(s).h, tf.a_traj.h), 1e-8);
    }
  }
}

TEST(TrajectoryFrames, ZeroAngleEq35) {
  OffsetSpec sp = cone_spec(OffsetPairing::M1mToM1p, 0.5, 0.0);
  sp.theta = Expr::number(0);
  const TrajectoryFrames tf = trajectory_frames(sp, 0.5);
  expect_vec(tf.a_traj.q, sp.base->frame(0.5).q, 1e-15);
}

TEST(ThetaSweep, DrallRootMatchesDevelopabilityRoot) {
  // drall of phi* at s0 as a function of the angle offset crosses zero where
  // the developability residual does
  struct Case {
    OffsetPairing p;
    double R;
  };
  const Case cases[] = {{OffsetPairing::M1mToM1p, 1.0}, {OffsetPairing::M1mToM1m, 0.5}, {OffsetPairing::M1pToM2p, 1.0}};
  const double s0 = 0.8;
  for (const auto& c : cases) {
    const bool plus = c.p == OffsetPairing::M1pToM2p;
    const SurfacePtr base = plus ? cone_m1plus() : cone_m1minus();
    const FrameInvariants inv = base->invariants(s0);
    const double root = solve_theta(c.p, c.R, inv.kappa, inv.ds1_ds);
    auto drall_at = [&](double tc) {
      OffsetSpec sp;
      sp.base = base;
      sp.R = Expr::number(c.R);
      sp.pairing = c.p;
      sp.theta = Expr::number(tc) - Expr::number(inv.ds1_ds) * (Expr::var() - Expr::number(s0));
      return drall(*build_offset(sp).surface, s0);
    };
    const double found = bisect(drall_at, root - 0.3, root + 0.3, 1e-12);
    EXPECT_NEAR(found, root, 1e-8) << pairing_name(c.p);
  }
}
