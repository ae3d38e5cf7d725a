#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plasmon/extremum.hpp"
#include "plasmon/fresnel.hpp"
#include "plasmon/quantum_states.hpp"

namespace plasmon {

/// Real amplitude transmissions of the two arms (detection efficiency
/// included).
struct ChannelEfficiencies {
  double eta_a = 1.0;
  double eta_b = 1.0;

  static ChannelEfficiencies balanced(double eta) { return {eta, eta}; }
  bool is_balanced() const noexcept { return eta_a == eta_b; }
  /// Throws ValidationError unless both lie in [0, 1].
  void validate() const;
};

/// Mean and standard deviation of the intensity difference n_b - n_a.
struct MeasurementStats {
  double mean;
  double std;
};

struct PrecisionResult {
  double delta_n;       // RIU
  double signal_slope;  // photons / RIU
  double noise;         // photons
};

/// <M> = (eta_b^2 - |r|^2 eta_a^2) N.
double signal_mean(double r_abs, const ChannelEfficiencies& eff, double photons);

/// <dM> = sqrt(N) [ (eta_b^2 - |r|^2 eta_a^2)^2 Q + 2 |r|^2 eta_a^2 eta_b^2 sigma
///                  + eta_b^2 + |r|^2 eta_a^2 (1 - 2 eta_b^2) ]^{1/2}
/// for a twin-mode input with N photons per mode. Throws DomainError on a
/// negative radicand.
double signal_std(double r_abs, const ChannelEfficiencies& eff, double photons, double q_mandel, double sigma);

/// Precision gain over the product coherent state with balanced loss eta:
/// R = sqrt((1 + |r|^2) / ((1 - |r|^2)^2 eta^2 Q + 2 |r|^2 eta^2 sigma + 1 + |r|^2 (1 - 2 eta^2))).
/// Throws DomainError when the denominator is not positive.
double ratio(double r_abs, double eta, double q_mandel, double sigma);
/// Same, rejecting unbalanced efficiencies with ValidationError.
double ratio(double r_abs, const ChannelEfficiencies& eff, double q_mandel, double sigma);

/// Closed form for |N, N> at eta = 1; independent of N. Throws DivergenceError
/// for r_abs outside (0, 1).
double ratio_twin_fock(double r_abs);

/// Closed form for the two-mode squeezed vacuum at eta = 1.
double ratio_tmsv(double r_abs, double photons);

/// Linear error propagation dn = <dM> / |d<M>/dn| at analyte index `n`.
/// The slope is a central difference of <M>(n) with step `h`; the state
/// enters only through its per-mode mean, Mandel Q and sigma.
PrecisionResult precision(const KretschmannStack& stack, const IncidenceGeometry& geom, double n,
                          const PhotonStatistics& state, const ChannelEfficiencies& eff,
                          double h = kDefaultIndexStep);

struct RatioPoint {
  double n_analyte;
  std::optional<double> ratio;  // empty when the point failed
  std::string error;
};

/// R along an analyte-index grid at fixed angle. Per-point failures are
/// recorded in the result and do not stop the sweep.
std::vector<RatioPoint> sweep_ratio(const KretschmannStack& stack, const IncidenceGeometry& geom,
                                    const std::vector<double>& n_grid, const PhotonStatistics& state, double eta);

struct NamedState {
  std::string name;
  PhotonStatistics stats;
};

struct PrecisionRow {
  double theta_deg;
  double n_inf;
  std::string state;
  double photons;
  ChannelEfficiencies efficiencies;
  double delta_n;
  double slope;
  double noise;
};

struct SkippedAngle {
  double theta_deg;
  std::string reason;
};

struct PrecisionSweep {
  std::vector<PrecisionRow> rows;
  std::vector<SkippedAngle> skipped;
};

struct InflectionSearch {
  Interval n_range{1.333, 1.4422};
  double tol = 1e-7;
  double h = kDefaultIndexStep;
  int scan_points = kDefaultScanPoints;
};

/// For each angle: locate the inflection index, then evaluate the precision of
/// every state there. Angles whose inflection falls on the range boundary are
/// skipped and reported.
PrecisionSweep sweep_precision_vs_angle(const KretschmannStack& stack, const std::vector<double>& theta_grid,
                                        const std::vector<NamedState>& states, double eta,
                                        const InflectionSearch& search = {});
/// Unbalanced variant; the moments follow the general-efficiency expressions.
PrecisionSweep sweep_precision_vs_angle(const KretschmannStack& stack, const std::vector<double>& theta_grid,
                                        const std::vector<NamedState>& states, const ChannelEfficiencies& eff,
                                        const InflectionSearch& search = {});

namespace detail {
/// `ratio` with an additive offset on its denominator. Only the
/// validation command's negative control uses a nonzero offset.
double ratio_with_offset(double r_abs, double eta, double q_mandel, double sigma, double denominator_offset);
}  // namespace detail

}  // namespace plasmon
