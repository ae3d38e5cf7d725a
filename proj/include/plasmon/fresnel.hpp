#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "plasmon/extremum.hpp"
#include "plasmon/materials.hpp"

namespace plasmon {

/// Prism / metal film / analyte sensor in the Kretschmann geometry.
struct KretschmannStack {
  double n_prism = 1.5107;
  MetalModel metal = bundled_gold_table();
  double thickness_nm = 50.0;
  double n_analyte = 1.333;
  double wavelength_nm = 810.0;

  /// Throws ValidationError unless n_prism > 1, n_prism > n_analyte > 0,
  /// thickness >= 0 and wavelength > 0.
  void validate() const;

  KretschmannStack with_analyte(double n) const {
    KretschmannStack copy = *this;
    copy.n_analyte = n;
    return copy;
  }
};

struct IncidenceGeometry {
  double theta_deg = 73.0;

  /// Throws ValidationError unless 0 < theta < 90.
  void validate() const;
  double theta_rad() const;
};

struct ReflectionResult {
  std::complex<double> r_sp;
  double reflectance;

  double amplitude() const { return std::abs(r_sp); }
  /// In (-pi, pi].
  double phase() const { return std::arg(r_sp); }
};

/// Conserved in-plane wavevector k_x = (2 pi / lambda) n_prism sin(theta), rad/nm.
double tangential_wavevector(const KretschmannStack& stack, const IncidenceGeometry& geom);

/// k_z = sqrt(eps k0^2 - k_x^2) on the branch with im >= 0 (re >= 0 when im == 0).
std::complex<double> wavevector_z(ComplexPermittivity eps, double k_x, double wavelength_nm);

/// TM interface coefficient (k_lz/eps_l - k_mz/eps_m) / (k_lz/eps_l + k_mz/eps_m).
std::complex<double> interface_reflection(ComplexPermittivity eps_l, ComplexPermittivity eps_m,
                                          std::complex<double> k_lz, std::complex<double> k_mz,
                                          std::string_view layer_pair = "l|m");

/// Three-layer Airy sum (e^{2i k2z d} r23 + r12) / (e^{2i k2z d} r23 r12 + 1).
ReflectionResult reflection_coefficient(const KretschmannStack& stack, const IncidenceGeometry& geom);

/// Reflectance |r_sp|^2 only; the hot path of every sweep.
double reflectance(const KretschmannStack& stack, const IncidenceGeometry& geom);

struct Layer {
  ComplexPermittivity eps;
  double thickness_nm = 0.0;  // ignored for the two semi-infinite ends
};

/// TM reflection amplitude of an arbitrary planar stack by 2x2 characteristic
/// matrices. Independent of `reflection_coefficient`; used to cross-check it.
std::complex<double> transfer_matrix_reflection(std::span<const Layer> layers, double k_x,
                                                double wavelength_nm);

/// Angle of minimum reflectance in `theta_range` (degrees).
double resonance_angle(const KretschmannStack& stack, Interval theta_range, double tol_deg,
                       int scan_points = kDefaultScanPoints);

inline constexpr double kDefaultIndexStep = 1e-6;  // RIU

/// d|r_sp|^2 / dn_analyte by central differences, 1/RIU.
double sensitivity(const KretschmannStack& stack, const IncidenceGeometry& geom, double n_analyte,
                   double h = kDefaultIndexStep);

/// Distance kept from the critical index n_prism sin(theta) by inflection_index.
inline constexpr double kCriticalIndexMargin = 1e-3;  // RIU

/// Analyte index maximising |sensitivity| in `n_range` (the inflection point
/// of the reflectance curve at fixed angle). The range is first clipped to
/// n < n_prism sin(theta) - kCriticalIndexMargin, where the analyte field is
/// evanescent.
double inflection_index(const KretschmannStack& stack, const IncidenceGeometry& geom, Interval n_range,
                        double tol, double h = kDefaultIndexStep, int scan_points = kDefaultScanPoints);

}  // namespace plasmon
