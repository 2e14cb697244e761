#include <gtest/gtest.h>

#include <cmath>

#include "error.hpp"
#include "lorentz.hpp"
#include "prop.hpp"

using namespace mannheim;
using mannheim::testing::Gen;
using mannheim::testing::kCases;

namespace {

// Independent oracle: the metric as the matrix diag(-1, 1, 1).
double gram(const LVec3& x, const LVec3& y) {
  const double G[3][3] = {{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  double acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += x[i] * G[i][j] * y[j];
  return acc;
}

double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
  return a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1) + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1);
}

void expect_vec(const LVec3& got, const LVec3& want, double tol) {
  EXPECT_NEAR(got.x1, want.x1, tol);
  EXPECT_NEAR(got.x2, want.x2, tol);
  EXPECT_NEAR(got.x3, want.x3, tol);
}

}  // namespace

TEST(LorentzDot, Examples) {
  EXPECT_EQ(lorentz_dot({1, 0, 0}, {1, 0, 0}), -1.0);
  EXPECT_EQ(lorentz_dot({0, 1, 0}, {0, 0, 1}), 0.0);
  EXPECT_EQ(lorentz_dot({1, 2, 0}, {-1, 2, 0}), 5.0);
}

TEST(LorentzDot, MatchesGramOracleSymmetricBilinear) {
  Gen g;
  for (int i = 0; i < kCases; ++i) {
    const LVec3 x = g.vec(), y = g.vec(), z = g.vec();
    const double a = g.uniform(-3, 3);
    EXPECT_NEAR(lorentz_dot(x, y), gram(x, y), 1e-12);
    EXPECT_EQ(lorentz_dot(x, y), lorentz_dot(y, x));
    EXPECT_NEAR(lorentz_dot(a * x + z, y), a * lorentz_dot(x, y) + lorentz_dot(z, y), 1e-11);
  }
}

TEST(LorentzNorm, Examples) {
  EXPECT_DOUBLE_EQ(lorentz_norm({0, 3, 4}), 5.0);
  EXPECT_EQ(lorentz_norm({1, 1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(lorentz_norm({2, 1, 0}), std::sqrt(3.0));
}

TEST(LorentzCross, Examples) {
  expect_vec(lorentz_cross({0, 1, 0}, {0, 0, 1}), {1, 0, 0}, 0);
  expect_vec(lorentz_cross({1, 0, 0}, {0, 1, 0}), {0, 0, -1}, 0);
  const LVec3 x{0.3, -1.2, 2.5};
  expect_vec(lorentz_cross(x, x), {0, 0, 0}, 0);
}

TEST(LorentzCross, OrthogonalAndAntisymmetric) {
  Gen g;
  for (int i = 0; i < kCases; ++i) {
    const LVec3 x = g.vec(1.0), y = g.vec(1.0);
    const LVec3 c = lorentz_cross(x, y);
    EXPECT_NEAR(lorentz_dot(c, x), 0.0, 1e-12);
    EXPECT_NEAR(lorentz_dot(c, y), 0.0, 1e-12);
    expect_vec(lorentz_cross(y, x), -c, 1e-15);
  }
}

TEST(MixedProduct, BasisValueIsMinusOne) {
  // brute-force composition: cross then dot, written out by hand
  const LVec3 c{0 * 1 - 0 * 0, 1 * 0 - 0 * 0, 0 * 0 - 1 * 1};
  EXPECT_EQ(gram(c, {0, 0, 1}), -1.0);
  EXPECT_EQ(mixed_product({1, 0, 0}, {0, 1, 0}, {0, 0, 1}), -1.0);
}

TEST(MixedProduct, EqualsMinusEuclideanDeterminant) {
  Gen g;
  for (int i = 0; i < kCases; ++i) {
    const LVec3 a = g.vec(), b = g.vec(), c = g.vec();
    EXPECT_NEAR(mixed_product(a, b, c), -det3(a, b, c), 1e-11);
    EXPECT_NEAR(mixed_product(a, a, c), 0.0, 1e-12);
    EXPECT_NEAR(mixed_product(a, b, b), 0.0, 1e-12);
  }
}

TEST(MixedProduct, HelicoidTripleIsMinusOne) {
  for (double u : {-2.0, -0.5, 0.0, 0.7, 3.0})
    EXPECT_NEAR(mixed_product({0, 0, 1}, {std::cosh(u), std::sinh(u), 0}, {std::sinh(u), std::cosh(u), 0}), -1.0,
                1e-12 * std::cosh(u) * std::cosh(u));
}

TEST(ClassifyCausal, Examples) {
  EXPECT_EQ(classify_causal({1, 0, 0}), CausalClass::Timelike);
  EXPECT_EQ(classify_causal({1, 1, 0}), CausalClass::Null);
  EXPECT_EQ(classify_causal({0, 0, 0}), CausalClass::Spacelike);
  EXPECT_EQ(classify_causal({0, 1, 0}), CausalClass::Spacelike);
}

TEST(ClassifyCausal, RelativeToleranceAcrossScales) {
  for (double k : {1.0, 1e3, 1e6}) {
    EXPECT_EQ(classify_causal(LVec3{1, 1, 0} * k), CausalClass::Null);
    EXPECT_EQ(classify_causal(LVec3{1, 1.001, 0} * k), CausalClass::Spacelike);
  }
  EXPECT_EQ(classify_causal(LVec3{0, 1e-6, 0}), CausalClass::Null);  // below the absolute floor
  EXPECT_THROW(classify_causal({1, 0, 0}, -1.0), Error);
}

TEST(CausalSign, NullThrows) {
  EXPECT_EQ(causal_sign({2, 0, 0}), -1);
  EXPECT_EQ(causal_sign({0, 0, 2}), 1);
  EXPECT_THROW(causal_sign({1, 0, 1}), Error);
  EXPECT_THROW(lorentz_normalize({0, 0, 0}), Error);
}

TEST(LorentzAngle, Examples) {
  auto h = lorentz_angle({1, 0, 0}, {std::cosh(1.0), std::sinh(1.0), 0});
  EXPECT_EQ(h.kind, AngleKind::Hyperbolic);
  EXPECT_NEAR(h.theta, 1.0, 1e-12);

  auto sp = lorentz_angle({0, 1, 0}, {0, 0, 1});
  EXPECT_EQ(sp.kind, AngleKind::Spacelike);
  EXPECT_NEAR(sp.theta, M_PI / 2, 1e-12);

  auto ce = lorentz_angle({1, 2, 0}, {-1, 2, 0});
  EXPECT_EQ(ce.kind, AngleKind::Central);
  EXPECT_NEAR(ce.theta, std::log(3.0), 1e-12);

  auto lt = lorentz_angle({1, 0, 0}, {std::sinh(0.4), std::cosh(0.4), 0});
  EXPECT_EQ(lt.kind, AngleKind::LorentzianTimelike);
  EXPECT_NEAR(lt.theta, 0.4, 1e-12);
}

TEST(LorentzAngle, Errors) {
  EXPECT_THROW(lorentz_angle({1, 1, 0}, {1, 0, 0}), Error);
  EXPECT_THROW(lorentz_angle({0, 0, 0}, {1, 0, 0}), Error);
  EXPECT_THROW(lorentz_angle({1, 0, 0}, {-2, 0.5, 0}), Error);  // opposite time orientation
}

TEST(LorentzAngle, SymmetricAndNonNegative) {
  Gen g;
  for (int i = 0; i < kCases; ++i) {
    LVec3 x = g.timelike(), y = g.timelike();
    if ((x.x1 > 0) != (y.x1 > 0)) y = -y;
    const auto a = lorentz_angle(x, y), b = lorentz_angle(y, x);
    EXPECT_EQ(a.kind, AngleKind::Hyperbolic);
    EXPECT_GE(a.theta, 0.0);
    EXPECT_NEAR(a.theta, b.theta, 1e-9);
    // defining relation <x,y> = -|x||y| cosh(theta)
    EXPECT_NEAR(lorentz_dot(x, y), -lorentz_norm(x) * lorentz_norm(y) * std::cosh(a.theta),
                1e-8 * std::abs(lorentz_dot(x, y)));
  }
  for (int i = 0; i < kCases; ++i) {
    const LVec3 x{g.uniform(-0.5, 0.5), 1.0 + g.uniform(0, 1), g.uniform(-1, 1)};
    const LVec3 y{g.uniform(-0.5, 0.5), g.uniform(-1, 1), 1.0 + g.uniform(0, 1)};
    if (classify_causal(x) != CausalClass::Spacelike || classify_causal(y) != CausalClass::Spacelike) continue;
    const double gd = lorentz_dot(x, x) * lorentz_dot(y, y) - std::pow(lorentz_dot(x, y), 2);
    if (std::abs(gd) < 1e-6) continue;
    const auto a = lorentz_angle(x, y), b = lorentz_angle(y, x);
    EXPECT_EQ(a.kind, gd < 0 ? AngleKind::Central : AngleKind::Spacelike);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_NEAR(a.theta, b.theta, 1e-9);
    EXPECT_GE(a.theta, 0.0);
  }
}

TEST(SphereMembership, Examples) {
  EXPECT_EQ(sphere_membership({0, 1, 0}, 1, 1e-12), SphereMembership::OnS12);
  EXPECT_EQ(sphere_membership({1, 0, 0}, 1, 1e-12), SphereMembership::OnH02);
  EXPECT_EQ(sphere_membership({1, 1, 0}, 1, 1e-12), SphereMembership::Neither);
  EXPECT_EQ(sphere_membership({0, 0, 2}, 2, 1e-12), SphereMembership::OnS12);
  EXPECT_THROW(sphere_membership({0, 1, 0}, 0.0, 1e-12), Error);
}

// No two timelike vectors are orthogonal.
TEST(NullTimelikeLemma, TimelikePairsNeverOrthogonal) {
  Gen g;
  for (int i = 0; i < kCases; ++i) EXPECT_GT(std::abs(lorentz_dot(g.timelike(), g.timelike())), 1e-6);
}

// Two null vectors are orthogonal iff they are linearly dependent.
TEST(NullTimelikeLemma, NullPairsOrthogonalIffDependent) {
  Gen g;
  for (int i = 0; i < kCases; ++i) {
    const LVec3 x = g.null(), y = g.null();
    const bool dependent = euclidean_norm(lorentz_cross(x, y)) < 1e-9;
    if (!dependent) EXPECT_GT(std::abs(lorentz_dot(x, y)), 1e-12);
    const LVec3 z = g.uniform(-3, 3) * x;
    EXPECT_NEAR(lorentz_dot(x, z), 0.0, 1e-12);
  }
}

// No timelike vector is orthogonal to a null vector.
TEST(NullTimelikeLemma, TimelikeNeverOrthogonalToNull) {
  Gen g;
  for (int i = 0; i < kCases; ++i) EXPECT_GT(std::abs(lorentz_dot(g.timelike(), g.null())), 1e-6);
}

TEST(ParallelSine, Basic) {
  EXPECT_NEAR(parallel_sine({1, 2, 3}, {-2, -4, -6}), 0.0, 1e-15);
  EXPECT_NEAR(parallel_sine({1, 0, 0}, {0, 1, 0}), 1.0, 1e-15);
  EXPECT_THROW(parallel_sine({0, 0, 0}, {0, 1, 0}), Error);
}
