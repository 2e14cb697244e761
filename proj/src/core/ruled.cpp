#include "ruled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace mannheim {

namespace {

std::string at_s(const char* what, double s) {
  std::ostringstream os;
  os.precision(10);
  os << what << " at s = " << s;
  return os.str();
}

// Unit director jet from raw derivatives r0, r1, r2 of q(s).
DirectorJet normalized_jet(const LVec3& r0, const LVec3& r1, const LVec3& r2, int order, double s) {
  const double g = lorentz_dot(r0, r0);
  if (classify_causal(r0) == CausalClass::Null || euclidean_norm_sq(r0) == 0.0)
    throw Error(ErrorKind::NullVector, at_s("null director", s));
  const double sg = g < 0 ? -1.0 : 1.0;
  const double w = sg * g;
  const double u = 1.0 / std::sqrt(w);
  DirectorJet j;
  j.order = order;
  j.d[0] = u * r0;
  if (order >= 1) {
    const double w1 = 2.0 * sg * lorentz_dot(r0, r1);
    const double u1 = -0.5 * u / w * w1;
    j.d[1] = u1 * r0 + u * r1;
    if (order >= 2) {
      const double w2 = 2.0 * sg * (lorentz_dot(r1, r1) + lorentz_dot(r0, r2));
      const double u2 = 0.75 * u / (w * w) * w1 * w1 - 0.5 * u / w * w2;
      j.d[2] = u2 * r0 + 2.0 * u1 * r1 + u * r2;
    }
  }
  return j;
}

struct Kinematics {
  FrameSample f;
  double d2s1 = 0.0;
  LVec3 dh;  // d/ds
  LVec3 da;
};

SurfaceTag tag_from_signs(int eps2, int eps1, double s) {
  if (eps2 < 0 && eps1 > 0) return SurfaceTag::M1Minus;
  if (eps2 > 0 && eps1 > 0) return SurfaceTag::M1Plus;
  if (eps2 > 0 && eps1 < 0) return SurfaceTag::M2Plus;
  throw Error(ErrorKind::Degenerate, at_s("timelike director with timelike derivative", s));
}

LVec3 darboux_of(SurfaceTag t, int eps2, double kappa, const LVec3& q, const LVec3& a) {
  return is_timelike_type(t) ? eps2 * kappa * q - a : -kappa * q + a;
}

Kinematics kinematics(const RuledSurface& S, double s) {
  const DirectorJet j = S.director_jet(s, 2);
  const LVec3& q = j.d[0];
  const LVec3& dq = j.d[1];
  const LVec3& ddq = j.d[2];
  if (euclidean_norm(dq) < 1e-12) throw Error(ErrorKind::Degenerate, at_s("cylindrical ruling (dq/ds = 0)", s));
  if (classify_causal(dq) == CausalClass::Null) throw Error(ErrorKind::NullVector, at_s("null dq/ds", s));
  const int eps2 = causal_sign(q);
  const double g1 = lorentz_dot(dq, dq);
  const int eps1 = g1 < 0 ? -1 : 1;
  const SurfaceTag tag = tag_from_signs(eps2, eps1, s);
  const int eps3 = -eps1 * eps2;

  Kinematics k;
  FrameSample& f = k.f;
  f.s = s;
  f.type = tag;
  f.eps1 = eps1;
  f.eps2 = eps2;
  f.ds1_ds = std::sqrt(std::abs(g1));
  f.q = q;
  f.h = dq / f.ds1_ds;
  f.a = eps3 * lorentz_cross(f.h, q);
  k.d2s1 = eps1 * lorentz_dot(dq, ddq) / f.ds1_ds;
  k.dh = (ddq - k.d2s1 * f.h) / f.ds1_ds;
  k.da = eps3 * (lorentz_cross(k.dh, q) + lorentz_cross(f.h, dq));
  const double proj = lorentz_dot(k.da / f.ds1_ds, f.h);
  f.kappa = is_timelike_type(tag) ? eps1 * eps2 * proj : -proj;
  f.darboux = darboux_of(tag, eps2, f.kappa, f.q, f.a);
  return k;
}

// Rates dX/ds1 required by the frame ODE.
FrameRates ode_rates(const FrameSample& f) {
  const int e1 = f.eps1, e2 = f.eps2, e3 = -e1 * e2;
  return {f.h, -e1 * e2 * f.q + f.kappa * f.a, -e1 * e3 * f.kappa * f.h};
}

}  // namespace

const char* short_name(SurfaceTag t) noexcept {
  switch (t) {
    case SurfaceTag::M1Minus: return "M1-";
    case SurfaceTag::M1Plus: return "M1+";
    case SurfaceTag::M2Plus: return "M2+";
    case SurfaceTag::Degenerate: return "degenerate";
  }
  return "?";
}

int eps1_of(SurfaceTag t) {
  switch (t) {
    case SurfaceTag::M1Minus:
    case SurfaceTag::M1Plus: return 1;
    case SurfaceTag::M2Plus: return -1;
    default: throw Error(ErrorKind::Degenerate, "degenerate surface has no frame signs");
  }
}

int eps2_of(SurfaceTag t) {
  switch (t) {
    case SurfaceTag::M1Minus: return -1;
    case SurfaceTag::M1Plus:
    case SurfaceTag::M2Plus: return 1;
    default: throw Error(ErrorKind::Degenerate, "degenerate surface has no frame signs");
  }
}

int eps3_of(SurfaceTag t) { return -eps1_of(t) * eps2_of(t); }

// ---------------------------------------------------------------------------

void RuledSurface::set_samples(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "sampling resolution must be at least 2");
  samples_ = n;
}

void RuledSurface::check_domain(double s) const {
  const Interval d = domain();
  if (!d.contains(s, 1e-12 * (1.0 + std::abs(s)))) {
    std::ostringstream os;
    os.precision(17);
    os << "s = " << s << " outside surface domain [" << d.lo << ", " << d.hi << "]";
    throw Error(ErrorKind::Domain, os.str());
  }
}

FrameSample RuledSurface::frame(double s) const { return kinematics(*this, s).f; }

FrameRates RuledSurface::frame_rates(double s) const {
  const Kinematics k = kinematics(*this, s);
  return {k.f.h, k.dh / k.f.ds1_ds, k.da / k.f.ds1_ds};
}

FrameInvariants RuledSurface::invariants(double s) const {
  const Kinematics k = kinematics(*this, s);
  FrameInvariants inv;
  inv.kappa = k.f.kappa;
  inv.ds1_ds = k.f.ds1_ds;
  inv.d2s1_ds2 = k.d2s1;
  inv.dkappa_ds = fd_first([this](double t) { return frame(t).kappa; }, s, domain());
  return inv;
}

LVec3 RuledSurface::striction_point(double s) const {
  const DirectorJet j = director_jet(s, 1);
  const LVec3& dq = j.d[1];
  if (euclidean_norm(dq) < 1e-12) throw Error(ErrorKind::Degenerate, at_s("cylindrical ruling (dq/ds = 0)", s));
  if (classify_causal(dq) == CausalClass::Null) throw Error(ErrorKind::NullVector, at_s("null dq/ds", s));
  return base_point(s) - (lorentz_dot(dq, base_velocity(s)) / lorentz_dot(dq, dq)) * j.d[0];
}

// ---------------------------------------------------------------------------

AnalyticSurface::AnalyticSurface(CurveDef k, CurveDef q, int samples) : k_(std::move(k)), q_(std::move(q)) {
  if (k_.domain().lo != q_.domain().lo || k_.domain().hi != q_.domain().hi)
    q_ = q_.with_domain(k_.domain());
  set_samples(samples);
  double dev = 0.0;
  for (double s : domain().grid(samples)) {
    try {
      dev = std::max(dev, std::abs(lorentz_norm(q_.eval(0, s)) - 1.0));
    } catch (const Error&) {
      // evaluation problems surface at use
    }
  }
  if (dev > 1e-6) {
    std::ostringstream os;
    os << "director is not unit (max |norm - 1| = " << dev << "); normalised at evaluation";
    add_warning(os.str());
  }
}

LVec3 AnalyticSurface::base_point(double s) const { return k_.eval(0, s); }
LVec3 AnalyticSurface::base_velocity(double s) const { return k_.eval(1, s); }

DirectorJet AnalyticSurface::director_jet(double s, int order) const {
  if (order < 0 || order > 2) throw Error(ErrorKind::InvalidArgument, "director jet order must be in [0, 2]");
  const LVec3 r0 = q_.eval(0, s);
  const LVec3 r1 = order >= 1 ? q_.eval(1, s) : LVec3{};
  const LVec3 r2 = order >= 2 ? q_.eval(2, s) : LVec3{};
  return normalized_jet(r0, r1, r2, order, s);
}

// ---------------------------------------------------------------------------

FunctionSurface::FunctionSurface(VectorFn base, VectorFn director, Interval domain, int samples)
    : base_(std::move(base)), director_(std::move(director)), domain_(domain) {
  if (!(domain.lo < domain.hi)) throw Error(ErrorKind::InvalidArgument, "surface domain must have s_min < s_max");
  set_samples(samples);
}

LVec3 FunctionSurface::base_point(double s) const {
  check_domain(s);
  return base_(s);
}

LVec3 FunctionSurface::base_velocity(double s) const {
  check_domain(s);
  return fd_first(base_, s, domain_);
}

DirectorJet FunctionSurface::director_jet(double s, int order) const {
  if (order < 0 || order > 2) throw Error(ErrorKind::InvalidArgument, "director jet order must be in [0, 2]");
  check_domain(s);
  const VectorFn unit = [this](double t) { return normalized_jet(director_(t), {}, {}, 0, t).d[0]; };
  DirectorJet j;
  j.order = order;
  j.d[0] = unit(s);
  if (order >= 1) j.d[1] = fd_first(unit, s, domain_);
  if (order >= 2) j.d[2] = fd_second(unit, s, domain_);
  return j;
}

// ---------------------------------------------------------------------------

namespace {

// First index of an m-point stencil containing i, clamped to [0, n).
std::size_t stencil_start(std::size_t i, std::size_t n, std::size_t m) {
  const std::size_t half = m / 2;
  const std::size_t lo = i >= half ? i - half : 0;
  return std::min(lo, n - m);
}

// Value (deriv 0) or slope (deriv 1) of the Lagrange polynomial through (x, y).
double lagrange_eval(const double* x, const double* y, int n, double at, int deriv) {
  double out = 0.0;
  for (int j = 0; j < n; ++j) {
    double denom = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != j) denom *= x[j] - x[m];
    double num = 0.0;
    if (deriv == 0) {
      num = 1.0;
      for (int m = 0; m < n; ++m)
        if (m != j) num *= at - x[m];
    } else {
      for (int skip = 0; skip < n; ++skip) {
        if (skip == j) continue;
        double prod = 1.0;
        for (int m = 0; m < n; ++m)
          if (m != j && m != skip) prod *= at - x[m];
        num += prod;
      }
    }
    out += y[j] * num / denom;
  }
  return out;
}

}  // namespace

SampledFrameSurface::SampledFrameSurface(SurfaceTag type, std::vector<Knot> knots, std::optional<FrameRecipe> recipe,
                                         int samples)
    : type_(type), knots_(std::move(knots)), recipe_(std::move(recipe)) {
  if (knots_.size() < 2) throw Error(ErrorKind::InvalidArgument, "sampled surface needs at least two knots");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i].s > knots_[i - 1].s)) throw Error(ErrorKind::InvalidArgument, "knots must be increasing");
  domain_ = {knots_.front().s, knots_.back().s};
  set_samples(samples);
  const std::size_t n = knots_.size();
  if (n < 5) return;
  knot_inv_.resize(n);
  // kappa = c <da, h> / sigma; its s-derivative uses the stored second derivative of a
  const double c = is_timelike_type(type_) ? eps1_of(type_) * eps2_of(type_) : -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Knot& kn = knots_[i];
    const Kinematics k = kinematics(*this, kn.s);
    const double sg = k.f.ds1_ds;
    FrameInvariants& inv = knot_inv_[i];
    inv.kappa = k.f.kappa;
    inv.ds1_ds = sg;
    inv.d2s1_ds2 = k.d2s1;
    inv.dkappa_ds = c * ((lorentz_dot(kn.d2a, kn.h) + lorentz_dot(kn.da, kn.dh)) / sg -
                         k.d2s1 * lorentz_dot(kn.da, kn.h) / (sg * sg));
  }
}

std::vector<double> SampledFrameSurface::knot_grid(int n) const {
  std::vector<double> out;
  for (double s : domain_.grid(n)) {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), s, [](const Knot& k, double x) { return k.s < x; });
    if (it == knots_.end()) it = std::prev(it);
    if (it != knots_.begin() && s - std::prev(it)->s < it->s - s) it = std::prev(it);
    if (out.empty() || out.back() != it->s) out.push_back(it->s);
  }
  return out;
}

FrameInvariants SampledFrameSurface::invariants(double s) const {
  if (knot_inv_.empty()) return RuledSurface::invariants(s);
  check_domain(s);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s, [](double x, const Knot& k) { return x < k.s; });
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  // four nearest knots around the cell [i, i+1]
  const std::size_t lo = stencil_start(i + 1, knots_.size(), 4);
  double xs[4];
  for (int k = 0; k < 4; ++k) xs[k] = knots_[lo + k].s;
  auto field = [&](double FrameInvariants::*m) {
    double ys[4];
    for (int k = 0; k < 4; ++k) ys[k] = knot_inv_[lo + k].*m;
    return lagrange_eval(xs, ys, 4, s, 0);
  };
  FrameInvariants inv;
  inv.kappa = field(&FrameInvariants::kappa);
  inv.dkappa_ds = field(&FrameInvariants::dkappa_ds);
  inv.ds1_ds = field(&FrameInvariants::ds1_ds);
  inv.d2s1_ds2 = field(&FrameInvariants::d2s1_ds2);
  return inv;
}

LVec3 SampledFrameSurface::interp(double s, int order, LVec3 Knot::*v, LVec3 Knot::*d1, LVec3 Knot::*d2) const {
  check_domain(s);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s, [](double x, const Knot& k) { return x < k.s; });
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  i = std::min(i, knots_.size() - 2);
  const Knot& k0 = knots_[i];
  const Knot& k1 = knots_[i + 1];
  const double h = k1.s - k0.s;
  const double t = (s - k0.s) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  // quintic Hermite basis: p0, h m0, h^2 a0, h^2 a1, h m1, p1
  double b[6];
  double scale = 1.0;
  switch (order) {
    case 0:
      b[0] = 1 - 10 * t3 + 15 * t4 - 6 * t5;
      b[1] = t - 6 * t3 + 8 * t4 - 3 * t5;
      b[2] = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
      b[3] = 0.5 * t3 - t4 + 0.5 * t5;
      b[4] = -4 * t3 + 7 * t4 - 3 * t5;
      b[5] = 10 * t3 - 15 * t4 + 6 * t5;
      break;
    case 1:
      b[0] = -30 * t2 + 60 * t3 - 30 * t4;
      b[1] = 1 - 18 * t2 + 32 * t3 - 15 * t4;
      b[2] = t - 4.5 * t2 + 6 * t3 - 2.5 * t4;
      b[3] = 1.5 * t2 - 4 * t3 + 2.5 * t4;
      b[4] = -12 * t2 + 28 * t3 - 15 * t4;
      b[5] = 30 * t2 - 60 * t3 + 30 * t4;
      scale = 1.0 / h;
      break;
    case 2:
      b[0] = -60 * t + 180 * t2 - 120 * t3;
      b[1] = -36 * t + 96 * t2 - 60 * t3;
      b[2] = 1 - 9 * t + 18 * t2 - 10 * t3;
      b[3] = 3 * t - 12 * t2 + 10 * t3;
      b[4] = -24 * t + 84 * t2 - 60 * t3;
      b[5] = 60 * t - 180 * t2 + 120 * t3;
      scale = 1.0 / (h * h);
      break;
    default: throw Error(ErrorKind::InvalidArgument, "interpolation order must be in [0, 2]");
  }
  const LVec3 r = b[0] * (k0.*v) + b[1] * h * (k0.*d1) + b[2] * h * h * (k0.*d2) + b[3] * h * h * (k1.*d2) +
                  b[4] * h * (k1.*d1) + b[5] * (k1.*v);
  return scale * r;
}

LVec3 SampledFrameSurface::base_point(double s) const { return interp(s, 0, &Knot::c, &Knot::dc, &Knot::d2c); }
LVec3 SampledFrameSurface::base_velocity(double s) const { return interp(s, 1, &Knot::c, &Knot::dc, &Knot::d2c); }
LVec3 SampledFrameSurface::q_at(double s) const { return interp(s, 0, &Knot::q, &Knot::dq, &Knot::d2q); }
LVec3 SampledFrameSurface::h_at(double s) const { return interp(s, 0, &Knot::h, &Knot::dh, &Knot::d2h); }
LVec3 SampledFrameSurface::a_at(double s) const { return interp(s, 0, &Knot::a, &Knot::da, &Knot::d2a); }

DirectorJet SampledFrameSurface::director_jet(double s, int order) const {
  if (order < 0 || order > 2) throw Error(ErrorKind::InvalidArgument, "director jet order must be in [0, 2]");
  const LVec3 r0 = q_at(s);
  const LVec3 r1 = order >= 1 ? interp(s, 1, &Knot::q, &Knot::dq, &Knot::d2q) : LVec3{};
  const LVec3 r2 = order >= 2 ? interp(s, 2, &Knot::q, &Knot::dq, &Knot::d2q) : LVec3{};
  return normalized_jet(r0, r1, r2, order, s);
}

// ---------------------------------------------------------------------------

void validate_frame(SurfaceTag type, const FrameSeed& f, double tol) {
  if (type == SurfaceTag::Degenerate) throw Error(ErrorKind::InvalidArgument, "cannot build a frame for a degenerate type");
  const int e1 = eps1_of(type), e2 = eps2_of(type), e3 = eps3_of(type);
  const double dev[] = {
      lorentz_dot(f.q, f.q) - e2, lorentz_dot(f.h, f.h) - e1, lorentz_dot(f.a, f.a) - e3,
      lorentz_dot(f.q, f.h),      lorentz_dot(f.q, f.a),      lorentz_dot(f.h, f.a),
  };
  for (double d : dev)
    if (!(std::abs(d) <= tol)) throw Error(ErrorKind::InvalidArgument, "initial frame is not pseudo-orthonormal for the type");
  LVec3 qh, ha, aq;
  if (is_timelike_type(type)) {
    qh = e2 * f.a;
    ha = -e2 * f.q;
    aq = -f.h;
  } else {
    qh = -f.a;
    ha = -f.q;
    aq = f.h;
  }
  const double r = std::max({euclidean_norm(lorentz_cross(f.q, f.h) - qh), euclidean_norm(lorentz_cross(f.h, f.a) - ha),
                             euclidean_norm(lorentz_cross(f.a, f.q) - aq)});
  if (!(r <= tol)) throw Error(ErrorKind::InvalidArgument, "initial frame violates the cross-product relations of the type");
}

namespace {

struct State {
  LVec3 c, q, h, a;
};

State axpy(const State& y, double k, const State& d) {
  return {y.c + k * d.c, y.q + k * d.q, y.h + k * d.h, y.a + k * d.a};
}

}  // namespace

std::shared_ptr<const SampledFrameSurface> integrate_frame(const FrameRecipe& r) {
  if (!(r.step > 0.0) || !std::isfinite(r.step)) throw Error(ErrorKind::InvalidArgument, "integration step must be > 0");
  if (!(r.domain.lo < r.domain.hi)) throw Error(ErrorKind::InvalidArgument, "integration domain must have s_min < s_max");
  validate_frame(r.type, r.frame0);
  const int e1 = eps1_of(r.type), e2 = eps2_of(r.type), e3 = eps3_of(r.type);
  const double alpha = -e1 * e2;  // dh/ds1 = alpha q + kappa a
  const double gamma = -e1 * e3;  // da/ds1 = gamma kappa h
  const Expr dkappa = differentiate(r.kappa);
  const Expr dsigma = differentiate(r.ds1_ds);

  auto sigma_at = [&](double s) {
    const double v = r.ds1_ds.eval(s);
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, at_s("ds1/ds must be positive", s));
    return v;
  };
  auto rhs = [&](double s, const State& y) {
    const double sg = sigma_at(s);
    const double k = r.kappa.eval(s);
    return State{y.q, sg * y.h, sg * (alpha * y.q + k * y.a), sg * gamma * k * y.h};
  };
  auto knot = [&](double s, const State& y) {
    SampledFrameSurface::Knot kn{};
    kn.s = s;
    kn.c = y.c;
    kn.q = y.q;
    kn.h = y.h;
    kn.a = y.a;
    const State d = rhs(s, y);
    kn.dc = d.c;
    kn.dq = d.q;
    kn.dh = d.h;
    kn.da = d.a;
    const double sg = sigma_at(s), sg1 = dsigma.eval(s);
    const double k = r.kappa.eval(s), k1 = dkappa.eval(s);
    kn.d2c = d.q;
    kn.d2q = sg1 * y.h + sg * d.h;
    kn.d2h = sg1 * (alpha * y.q + k * y.a) + sg * (alpha * d.q + k1 * y.a + k * d.a);
    kn.d2a = gamma * ((sg1 * k + sg * k1) * y.h + sg * k * d.h);
    return kn;
  };

  const double L = r.domain.length();
  const long n = std::max(1L, static_cast<long>(std::ceil(L / r.step - 1e-9)));
  const double h = L / static_cast<double>(n);
  State y{r.c0, r.frame0.q, r.frame0.h, r.frame0.a};
  std::vector<SampledFrameSurface::Knot> knots;
  knots.reserve(static_cast<std::size_t>(n) + 1);
  knots.push_back(knot(r.domain.lo, y));
  for (long i = 0; i < n; ++i) {
    const double s = r.domain.lo + h * static_cast<double>(i);
    const State k1 = rhs(s, y);
    const State k2 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(s + h, axpy(y, h, k3));
    y = {y.c + (h / 6.0) * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c),
         y.q + (h / 6.0) * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
         y.h + (h / 6.0) * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h),
         y.a + (h / 6.0) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a)};
    const bool last = i + 1 == n;
    if ((i + 1) % 16 == 0 || last) {
      const double drift = std::max({std::abs(lorentz_dot(y.q, y.q) - e2), std::abs(lorentz_dot(y.h, y.h) - e1),
                                     std::abs(lorentz_dot(y.a, y.a) - e3), std::abs(lorentz_dot(y.q, y.h)),
                                     std::abs(lorentz_dot(y.q, y.a)), std::abs(lorentz_dot(y.h, y.a))});
      if (!(drift <= 1e-6)) {
        std::ostringstream os;
        os << "frame drift " << drift << " exceeds 1e-6 near s = " << s + h;
        throw Error(ErrorKind::Convergence, os.str());
      }
      y.q = y.q / std::sqrt(e2 * lorentz_dot(y.q, y.q));
      y.h = y.h - e2 * lorentz_dot(y.h, y.q) * y.q;
      y.h = y.h / std::sqrt(e1 * lorentz_dot(y.h, y.h));
      y.a = y.a - e2 * lorentz_dot(y.a, y.q) * y.q - e1 * lorentz_dot(y.a, y.h) * y.h;
      y.a = y.a / std::sqrt(e3 * lorentz_dot(y.a, y.a));
    }
    knots.push_back(knot(last ? r.domain.hi : s + h, y));
  }
  return std::make_shared<const SampledFrameSurface>(r.type, std::move(knots), r);
}

// ---------------------------------------------------------------------------

LVec3 eval_surface(const RuledSurface& S, double s, double v) { return S.base_point(s) + v * S.director(s); }

SurfaceNormal surface_normal(const RuledSurface& S, double s, double v) {
  const DirectorJet j = S.director_jet(s, 1);
  const LVec3 ps = S.base_velocity(s) + v * j.d[1];
  const LVec3& pv = j.d[0];
  const LVec3 n = lorentz_cross(ps, pv);
  if (euclidean_norm(n) <= 1e-12 * std::max(1.0, euclidean_norm(ps) * euclidean_norm(pv)))
    throw Error(ErrorKind::Degenerate, at_s("singular point (phi_s parallel to phi_v)", s));
  const CausalClass cls = classify_causal(n);
  if (cls == CausalClass::Null) throw Error(ErrorKind::NullVector, at_s("null surface normal", s));
  return {n / lorentz_norm(n), cls};
}

LVec3 striction_curve(const RuledSurface& S, double s) { return S.striction_point(s); }

double drall(const RuledSurface& S, double s) {
  const DirectorJet j = S.director_jet(s, 1);
  const LVec3& dq = j.d[1];
  if (euclidean_norm(dq) < 1e-12) throw Error(ErrorKind::Degenerate, at_s("cylindrical ruling (dq/ds = 0)", s));
  if (classify_causal(dq) == CausalClass::Null) throw Error(ErrorKind::NullVector, at_s("null dq/ds", s));
  return mixed_product(S.base_velocity(s), j.d[0], dq) / lorentz_dot(dq, dq);
}

StrictionData striction_data(const RuledSurface& S, int n, double tol) {
  StrictionData out;
  for (double s : S.domain().grid(n > 0 ? n : S.samples())) {
    const double d = drall(S, s);
    out.points.push_back({s, S.striction_point(s), d});
    out.max_abs_drall = std::max(out.max_abs_drall, std::abs(d));
  }
  out.developable = out.max_abs_drall <= tol;
  return out;
}

SurfaceType classify_surface(const RuledSurface& S) {
  SurfaceType first;
  bool have = false;
  double first_s = 0.0;
  for (double s : S.domain().grid(S.samples())) {
    FrameSample f;
    try {
      f = S.frame(s);
    } catch (const Error& e) {
      return {SurfaceTag::Degenerate, e.what()};
    }
    if (!have) {
      first.tag = f.type;
      first_s = s;
      have = true;
    } else if (f.type != first.tag) {
      std::ostringstream os;
      os.precision(10);
      os << "causal character changes between s = " << first_s << " (" << short_name(first.tag) << ") and s = " << s
         << " (" << short_name(f.type) << ")";
      return {SurfaceTag::Degenerate, os.str()};
    }
  }
  return first;
}

FrameSample frenet_frame(const RuledSurface& S, double s) { return S.frame(s); }

double FrameResidual::max() const { return std::max({r_q, r_h, r_a, r_darboux}); }

FrameResidual frame_ode_residual(const RuledSurface& S, double s) {
  const FrameSample f = S.frame(s);
  const FrameRates got = S.frame_rates(s);
  const FrameRates want = ode_rates(f);
  FrameResidual r;
  r.r_q = euclidean_norm(got.dq - want.dq);
  r.r_h = euclidean_norm(got.dh - want.dh);
  r.r_a = euclidean_norm(got.da - want.da);
  r.r_darboux = std::max({euclidean_norm(got.dq - lorentz_cross(f.darboux, f.q)),
                          euclidean_norm(got.dh - lorentz_cross(f.darboux, f.h)),
                          euclidean_norm(got.da - lorentz_cross(f.darboux, f.a))});
  return r;
}

namespace {

LVec3 striction_velocity(const RuledSurface& S, double s) {
  return fd_first([&S](double t) { return S.striction_point(t); }, s, S.domain());
}

}  // namespace

ArclengthTable arclength_reparametrization(const RuledSurface& S, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "reparametrization needs at least 2 output points");
  const std::vector<double> grid = S.domain().grid(S.samples());
  std::vector<double> cum(grid.size(), 0.0);
  const VectorFn vel = [&S](double t) { return striction_velocity(S, t); };
  for (std::size_t i = 1; i < grid.size(); ++i) {
    cum[i] = cum[i - 1] + arclength(vel, grid[i - 1], grid[i]);
    if (!(cum[i] > cum[i - 1])) throw Error(ErrorKind::Degenerate, at_s("striction curve stalls", grid[i]));
  }
  const std::vector<double> slopes = monotone_slopes(cum, grid);
  const HermiteCubic inverse(cum, grid, slopes);
  ArclengthTable out;
  out.length = cum.back();
  for (int j = 0; j < n; ++j) {
    const double t = j == n - 1 ? out.length : out.length * j / (n - 1);
    out.t.push_back(t);
    out.s.push_back(j == n - 1 ? grid.back() : inverse(t));
  }
  return out;
}

double unit_speed_defect(const RuledSurface& S) {
  double worst = 0.0;
  for (double s : S.domain().grid(S.samples()))
    worst = std::max(worst, std::abs(lorentz_norm(striction_velocity(S, s)) - 1.0));
  return worst;
}

void require_unit_speed(const RuledSurface& S, double tol) {
  const double d = unit_speed_defect(S);
  if (d > tol) {
    std::ostringstream os;
    os << "striction curve is not unit speed (max deviation " << d << " > " << tol
       << "); reparametrize by arclength first";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

}  // namespace mannheim
