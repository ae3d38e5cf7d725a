#pragma once

#include <functional>

namespace plasmon {

struct Interval {
  double lo;
  double hi;
};

/// Default number of points for the coarse scan before refinement.
inline constexpr int kDefaultScanPoints = 2001;

/// Global minimiser of `f` on `range`: uniform scan with `scan_points` samples,
/// then golden-section refinement inside the bracketing cell until the bracket
/// is narrower than `tol`. Throws NoInteriorExtremumError when the best scan
/// sample sits on either end of the range.
double locate_interior_minimum(const std::function<double(double)>& f, Interval range, double tol,
                               int scan_points = kDefaultScanPoints);

double locate_interior_maximum(const std::function<double(double)>& f, Interval range, double tol,
                               int scan_points = kDefaultScanPoints);

/// Central difference (f(x+h) - f(x-h)) / 2h.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Point of steepest slope of `curve` on `range`, i.e. argmax |f'| with f'
/// taken by central differences of step `h`.
double steepest_point(const std::function<double(double)>& curve, Interval range, double tol, double h,
                      int scan_points = kDefaultScanPoints);

}  // namespace plasmon
