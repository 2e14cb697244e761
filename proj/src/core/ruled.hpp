#pragma once

// Ruled surfaces phi(s, v) = k(s) + v q(s) and their Frenet apparatus
// {q, h, a}: ruling, central normal, asymptotic normal.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "lorentz.hpp"
#include "numeric.hpp"

namespace mannheim {

enum class SurfaceTag { M1Minus, M1Plus, M2Plus, Degenerate };

/// "M1-", "M1+", "M2+" or "degenerate".
const char* short_name(SurfaceTag t) noexcept;

struct SurfaceType {
  SurfaceTag tag = SurfaceTag::Degenerate;
  std::string reason;  // set for Degenerate

  bool degenerate() const { return tag == SurfaceTag::Degenerate; }
};

// Causal signs of the frame vectors for a classified type:
// eps2 = <q,q>, eps1 = <h,h>, eps3 = <a,a> (eps1 * eps2 * eps3 = -1).
int eps1_of(SurfaceTag t);
int eps2_of(SurfaceTag t);
int eps3_of(SurfaceTag t);
inline bool is_timelike_type(SurfaceTag t) { return t == SurfaceTag::M1Minus || t == SurfaceTag::M1Plus; }

struct FrameSample {
  double s = 0.0;
  SurfaceTag type = SurfaceTag::Degenerate;
  LVec3 q, h, a;
  int eps1 = 1;
  int eps2 = 1;
  double ds1_ds = 0.0;  // ||dq/ds|| with q normalised
  double kappa = 0.0;   // conical curvature
  LVec3 darboux;
};

/// Frame vector rates with respect to the arc s1 of the spherical image of q.
struct FrameRates {
  LVec3 dq, dh, da;
};

/// Quantities that enter the characterization ODEs, as functions of s.
struct FrameInvariants {
  double kappa = 0.0;
  double dkappa_ds = 0.0;
  double ds1_ds = 0.0;
  double d2s1_ds2 = 0.0;
};

/// Unit director and its first derivatives in s; `order` entries beyond 0 are valid.
struct DirectorJet {
  std::array<LVec3, 3> d;
  int order = 0;
};

class RuledSurface {
 public:
  virtual ~RuledSurface() = default;

  virtual Interval domain() const = 0;
  virtual LVec3 base_point(double s) const = 0;     // k(s)
  virtual LVec3 base_velocity(double s) const = 0;  // dk/ds
  /// Normalised director q/||q|| and derivatives up to `order` (<= 2).
  virtual DirectorJet director_jet(double s, int order) const = 0;

  virtual FrameSample frame(double s) const;
  virtual FrameRates frame_rates(double s) const;
  virtual FrameInvariants invariants(double s) const;
  virtual LVec3 striction_point(double s) const;

  int samples() const { return samples_; }
  void set_samples(int n);
  const std::vector<std::string>& warnings() const { return warnings_; }

  LVec3 director(double s) const { return director_jet(s, 0).d[0]; }

 protected:
  void check_domain(double s) const;
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  int samples_ = 512;
  std::vector<std::string> warnings_;
};

using SurfacePtr = std::shared_ptr<const RuledSurface>;

/// Ruled surface with closed-form base curve and director. The director is
/// normalised at evaluation; a warning is recorded when its Lorentz norm
/// deviates from 1 by more than 1e-6 on the sample grid.
class AnalyticSurface final : public RuledSurface {
 public:
  AnalyticSurface(CurveDef k, CurveDef q, int samples = 512);

  Interval domain() const override { return k_.domain(); }
  LVec3 base_point(double s) const override;
  LVec3 base_velocity(double s) const override;
  DirectorJet director_jet(double s, int order) const override;

  const CurveDef& base_curve() const { return k_; }
  const CurveDef& director_curve() const { return q_; }

 private:
  CurveDef k_;
  CurveDef q_;
};

/// Ruled surface given by arbitrary base/director functions; derivatives by
/// five-point finite differences.
class FunctionSurface final : public RuledSurface {
 public:
  FunctionSurface(VectorFn base, VectorFn director, Interval domain, int samples = 512);

  Interval domain() const override { return domain_; }
  LVec3 base_point(double s) const override;
  LVec3 base_velocity(double s) const override;
  DirectorJet director_jet(double s, int order) const override;

 private:
  VectorFn base_;
  VectorFn director_;
  Interval domain_;
};

struct FrameSeed {
  LVec3 q, h, a;
};

/// Inputs for synthesising a developable surface from prescribed frame
/// invariants by integrating the frame ODE together with dc/ds = q.
struct FrameRecipe {
  SurfaceTag type = SurfaceTag::M1Minus;
  Expr kappa;
  Expr ds1_ds = Expr::number(1.0);
  FrameSeed frame0{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  LVec3 c0;
  Interval domain{0.0, 1.0};
  double step = 1e-3;
};

/// Dense RK4 samples (s, c, q, h, a) with quintic Hermite interpolation (values,
/// first and second derivatives from the frame ODE). The base curve is the
/// striction curve by construction.
class SampledFrameSurface final : public RuledSurface {
 public:
  struct Knot {
    double s;
    LVec3 c, q, h, a;
    LVec3 dc, dq, dh, da;      // d/ds at the knot
    LVec3 d2c, d2q, d2h, d2a;  // d^2/ds^2
  };

  SampledFrameSurface(SurfaceTag type, std::vector<Knot> knots, std::optional<FrameRecipe> recipe,
                      int samples = 512);

  Interval domain() const override { return domain_; }
  LVec3 base_point(double s) const override;
  LVec3 base_velocity(double s) const override;
  DirectorJet director_jet(double s, int order) const override;

  LVec3 striction_point(double s) const override { return base_point(s); }
  /// Invariants measured from the knot jets (exact at knots), interpolated
  /// between knots.
  FrameInvariants invariants(double s) const override;

  SurfaceTag type() const { return type_; }
  const std::vector<Knot>& knots() const { return knots_; }
  const std::optional<FrameRecipe>& recipe() const { return recipe_; }

  /// Uniform n-point grid of the domain with each point moved to its nearest
  /// knot (duplicates dropped).
  std::vector<double> knot_grid(int n) const;

  LVec3 q_at(double s) const;
  LVec3 h_at(double s) const;
  LVec3 a_at(double s) const;

 private:
  // order-th derivative of the interpolant of one knot field triple
  LVec3 interp(double s, int order, LVec3 Knot::*v, LVec3 Knot::*d1, LVec3 Knot::*d2) const;

  SurfaceTag type_;
  std::vector<Knot> knots_;
  std::optional<FrameRecipe> recipe_;
  Interval domain_;
  std::vector<FrameInvariants> knot_inv_;
};

/// Classic fixed-step RK4 synthesis. The frame is re-orthonormalised (Lorentz
/// Gram-Schmidt) every 16 steps; drift beyond 1e-6 before a re-orthonormalisation
/// is an error.
std::shared_ptr<const SampledFrameSurface> integrate_frame(const FrameRecipe& recipe);

/// Throws InvalidArgument unless (q, h, a) is pseudo-orthonormal for `type`
/// and satisfies the type's cross-product relations within tol.
void validate_frame(SurfaceTag type, const FrameSeed& f, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Pointwise geometry

LVec3 eval_surface(const RuledSurface& S, double s, double v);

struct SurfaceNormal {
  LVec3 m;                  // unit normal
  CausalClass normal_class;  // timelike normal: spacelike surface point
};
SurfaceNormal surface_normal(const RuledSurface& S, double s, double v);

LVec3 striction_curve(const RuledSurface& S, double s);

/// Signed distribution parameter |k', q, q'| / <q', q'>.
double drall(const RuledSurface& S, double s);

inline constexpr double kDevelopabilityTol = 1e-8;

struct StrictionPoint {
  double s;
  LVec3 c;
  double drall;
};

struct StrictionData {
  std::vector<StrictionPoint> points;
  double max_abs_drall = 0.0;
  bool developable = false;
};

StrictionData striction_data(const RuledSurface& S, int n = 0, double tol = kDevelopabilityTol);

SurfaceType classify_surface(const RuledSurface& S);

FrameSample frenet_frame(const RuledSurface& S, double s);

struct FrameResidual {
  double r_q = 0.0;
  double r_h = 0.0;
  double r_a = 0.0;
  double r_darboux = 0.0;  // max over q, h, a of |dX/ds1 - w x X|

  double max() const;
};

/// Euclidean norms of the deviation of the frame rates from the frame ODE of
/// the surface's type.
FrameResidual frame_ode_residual(const RuledSurface& S, double s);

/// Reparametrise the striction curve by Lorentzian arclength: returns the
/// original parameter s(t) on n knots of t in [0, L] using a monotone cubic
/// inverse of cumulative arclength.
struct ArclengthTable {
  std::vector<double> t;
  std::vector<double> s;
  double length = 0.0;
};
ArclengthTable arclength_reparametrization(const RuledSurface& S, int n);

/// max |(Lorentz speed of the striction curve) - 1| on the sample grid.
double unit_speed_defect(const RuledSurface& S);

/// Throws InvalidArgument when the striction curve is not unit speed within tol.
void require_unit_speed(const RuledSurface& S, double tol = 1e-6);

}  // namespace mannheim
