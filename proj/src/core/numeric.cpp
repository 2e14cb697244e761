#include "numeric.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mannheim {

std::vector<double> Interval::grid(int n) const {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return out;
}

namespace {

// Weights for f'(s) on the nodes s + k h, k = 0..4 (forward) scaled by 1/(12h).
constexpr double kForward1[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
// Weights for f''(s) on s + k h, k = 0..4, scaled by 1/(12 h^2).
constexpr double kForward2[5] = {35.0, -104.0, 114.0, -56.0, 11.0};

template <class T, class F>
T first_impl(const F& f, double s, const Interval& dom, double h) {
  if (s - 2 * h >= dom.lo && s + 2 * h <= dom.hi)
    return (f(s - 2 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2 * h)) * (1.0 / (12.0 * h));
  const double dir = (s - 2 * h < dom.lo) ? 1.0 : -1.0;
  T acc = kForward1[0] * f(s);
  for (int k = 1; k < 5; ++k) acc = acc + kForward1[k] * f(s + dir * k * h);
  return acc * (dir / (12.0 * h));
}

}  // namespace

double fd_first(const ScalarFn& f, double s, const Interval& dom, double h) {
  return first_impl<double>(f, s, dom, h);
}

LVec3 fd_first(const VectorFn& f, double s, const Interval& dom, double h) {
  return first_impl<LVec3>(f, s, dom, h);
}

LVec3 fd_second(const VectorFn& f, double s, const Interval& dom, double h) {
  if (s - 2 * h >= dom.lo && s + 2 * h <= dom.hi)
    return (-1.0 * f(s - 2 * h) + 16.0 * f(s - h) - 30.0 * f(s) + 16.0 * f(s + h) - f(s + 2 * h)) *
           (1.0 / (12.0 * h * h));
  const double dir = (s - 2 * h < dom.lo) ? 1.0 : -1.0;
  LVec3 acc = kForward2[0] * f(s);
  for (int k = 1; k < 5; ++k) acc = acc + kForward2[k] * f(s + dir * k * h);
  return acc * (1.0 / (12.0 * h * h));
}

namespace {

double simpson_step(const ScalarFn& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw Error(ErrorKind::Convergence, "adaptive Simpson exhausted its depth budget");
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, abs_tol, max_depth);
  // Split into a few panels first so narrow features are not skipped.
  constexpr int kPanels = 8;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + (b - a) * i / kPanels;
    const double hi = i == kPanels - 1 ? b : a + (b - a) * (i + 1) / kPanels;
    const double m = 0.5 * (lo + hi);
    const double flo = f(lo), fhi = f(hi), fm = f(m);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += simpson_step(f, lo, flo, hi, fhi, m, fm, whole, abs_tol / kPanels, max_depth);
  }
  return total;
}

double bisect(const ScalarFn& f, double a, double b, double x_tol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw Error(ErrorKind::InvalidArgument, "bisection bracket has no sign change");
  for (int it = 0; it < 200 && std::abs(b - a) > x_tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

HermiteCubic::HermiteCubic(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
  if (x_.size() < 2 || y_.size() != x_.size() || dy_.size() != x_.size())
    throw Error(ErrorKind::InvalidArgument, "Hermite interpolation needs matching arrays of >= 2 knots");
}

std::size_t HermiteCubic::segment(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double HermiteCubic::operator()(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double u = (t - x_[i]) / h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y_[i] + (u3 - 2 * u2 + u) * h * dy_[i] + (-2 * u3 + 3 * u2) * y_[i + 1] +
         (u3 - u2) * h * dy_[i + 1];
}

double HermiteCubic::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double u = (t - x_[i]) / h;
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * y_[i] + (-6 * u2 + 6 * u) * y_[i + 1]) / h + (3 * u2 - 4 * u + 1) * dy_[i] +
         (3 * u2 - 2 * u) * dy_[i + 1];
}

std::vector<double> monotone_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 2) return m;
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / d[i];
    const double b = m[i + 1] / d[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double t = 3.0 / std::sqrt(r);
      m[i] = t * a * d[i];
      m[i + 1] = t * b * d[i];
    }
  }
  return m;
}

}  // namespace mannheim
