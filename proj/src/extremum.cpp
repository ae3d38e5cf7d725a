#include "plasmon/extremum.hpp"

#include <cmath>

#include <fmt/format.h>

#include "plasmon/error.hpp"

namespace plasmon {

namespace {

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double locate_interior_minimum(const std::function<double(double)>& f, Interval range, double tol,
                               int scan_points) {
  if (!(range.hi > range.lo)) throw ValidationError("search interval must satisfy lo < hi");
  if (scan_points < 3) throw ValidationError("scan needs at least 3 points");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");

  const double step = (range.hi - range.lo) / (scan_points - 1);
  int best = 0;
  double best_value = f(range.lo);
  for (int i = 1; i < scan_points; ++i) {
    const double x = (i == scan_points - 1) ? range.hi : range.lo + i * step;
    const double v = f(x);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best == scan_points - 1) {
    throw NoInteriorExtremumError(fmt::format("extremum on the boundary of [{}, {}] at {}", range.lo, range.hi,
                                              best == 0 ? range.lo : range.hi));
  }
  const double a = range.lo + (best - 1) * step;
  const double b = range.lo + (best + 1) * step;
  return golden_section_min(f, a, b, tol);
}

double locate_interior_maximum(const std::function<double(double)>& f, Interval range, double tol,
                               int scan_points) {
  return locate_interior_minimum([&](double x) { return -f(x); }, range, tol, scan_points);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double steepest_point(const std::function<double(double)>& curve, Interval range, double tol, double h,
                      int scan_points) {
  return locate_interior_maximum([&](double x) { return std::abs(central_difference(curve, x, h)); }, range,
                                 tol, scan_points);
}

}  // namespace plasmon
