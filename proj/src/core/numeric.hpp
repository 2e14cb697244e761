#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lorentz.hpp"

namespace mannheim {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double s, double slack = 0.0) const { return s >= lo - slack && s <= hi + slack; }
  /// n equally spaced points including both ends (n == 1 gives lo).
  std::vector<double> grid(int n) const;
};

inline constexpr double kFdStep = 1e-4;

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<LVec3(double)>;

// Five-point finite differences. Stencils are central when [s-2h, s+2h] fits in
// the domain and one-sided (same order) otherwise.
double fd_first(const ScalarFn& f, double s, const Interval& dom, double h = kFdStep);
LVec3 fd_first(const VectorFn& f, double s, const Interval& dom, double h = kFdStep);
LVec3 fd_second(const VectorFn& f, double s, const Interval& dom, double h = 1e-3);

/// Adaptive Simpson quadrature with Richardson correction. Throws
/// Error(Convergence) when the depth budget runs out before `abs_tol` is met.
double adaptive_simpson(const ScalarFn& f, double a, double b, double abs_tol, int max_depth = 50);

/// Bisection on a sign change of f over [a, b]; returns the midpoint of the
/// final bracket of width <= x_tol. Throws InvalidArgument without a sign change.
double bisect(const ScalarFn& f, double a, double b, double x_tol = 1e-12);

/// Cubic Hermite interpolation on a strictly increasing grid with given slopes.
class HermiteCubic {
 public:
  HermiteCubic() = default;
  HermiteCubic(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

  double operator()(double t) const;
  double derivative(double t) const;
  std::span<const double> knots() const { return x_; }

 private:
  std::size_t segment(double t) const;
  std::vector<double> x_, y_, dy_;
};

/// Slopes for a shape-preserving (Fritsch-Carlson) cubic through monotone data.
std::vector<double> monotone_slopes(std::span<const double> x, std::span<const double> y);

}  // namespace mannheim
