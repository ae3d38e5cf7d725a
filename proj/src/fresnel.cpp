#include "plasmon/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "plasmon/error.hpp"

namespace plasmon {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

double vacuum_wavenumber(double wavelength_nm) { return 2.0 * std::numbers::pi / wavelength_nm; }

}  // namespace

void KretschmannStack::validate() const {
  if (!(n_prism > 1.0)) throw ValidationError(fmt::format("n_prism must exceed 1, got {}", n_prism));
  if (!(n_analyte > 0.0)) throw ValidationError(fmt::format("n_analyte must be positive, got {}", n_analyte));
  if (!(n_prism > n_analyte)) {
    throw ValidationError(
        fmt::format("n_prism ({}) must exceed n_analyte ({}) for total reflection", n_prism, n_analyte));
  }
  if (!(thickness_nm >= 0.0) || !std::isfinite(thickness_nm)) {
    throw ValidationError(fmt::format("film thickness must be >= 0 nm, got {}", thickness_nm));
  }
  if (!(wavelength_nm > 0.0) || !std::isfinite(wavelength_nm)) {
    throw ValidationError(fmt::format("wavelength must be positive, got {}", wavelength_nm));
  }
}

void IncidenceGeometry::validate() const {
  if (!(theta_deg > 0.0 && theta_deg < 90.0)) {
    throw ValidationError(fmt::format("incidence angle must lie in (0, 90) degrees, got {}", theta_deg));
  }
}

double IncidenceGeometry::theta_rad() const { return theta_deg * std::numbers::pi / 180.0; }

double tangential_wavevector(const KretschmannStack& stack, const IncidenceGeometry& geom) {
  return vacuum_wavenumber(stack.wavelength_nm) * stack.n_prism * std::sin(geom.theta_rad());
}

cd wavevector_z(ComplexPermittivity eps, double k_x, double wavelength_nm) {
  const double k0 = vacuum_wavenumber(wavelength_nm);
  cd kz = std::sqrt(eps.value() * (k0 * k0) - k_x * k_x);
  if (kz.imag() < 0.0 || (kz.imag() == 0.0 && kz.real() < 0.0)) kz = -kz;
  return kz;
}

cd interface_reflection(ComplexPermittivity eps_l, ComplexPermittivity eps_m, cd k_lz, cd k_mz,
                        std::string_view layer_pair) {
  const cd ql = k_lz / eps_l.value();
  const cd qm = k_mz / eps_m.value();
  const cd den = ql + qm;
  if (den == cd{0.0, 0.0} || !std::isfinite(std::abs(den))) {
    throw SingularityError(fmt::format("vanishing TM Fresnel denominator at interface {}", layer_pair));
  }
  return (ql - qm) / den;
}

ReflectionResult reflection_coefficient(const KretschmannStack& stack, const IncidenceGeometry& geom) {
  stack.validate();
  geom.validate();
  const double kx = tangential_wavevector(stack, geom);
  const double lambda = stack.wavelength_nm;

  const ComplexPermittivity eps1{stack.n_prism * stack.n_prism, 0.0};
  const ComplexPermittivity eps2 = evaluate(stack.metal, lambda);
  const ComplexPermittivity eps3{stack.n_analyte * stack.n_analyte, 0.0};

  const cd k1z = wavevector_z(eps1, kx, lambda);
  const cd k2z = wavevector_z(eps2, kx, lambda);
  const cd k3z = wavevector_z(eps3, kx, lambda);

  const cd r12 = interface_reflection(eps1, eps2, k1z, k2z, "1|2");
  const cd r23 = interface_reflection(eps2, eps3, k2z, k3z, "2|3");
  const cd film = std::exp(2.0 * kI * k2z * stack.thickness_nm);

  const cd den = film * r23 * r12 + 1.0;
  if (den == cd{0.0, 0.0}) throw SingularityError("vanishing denominator in the three-layer Airy sum");
  const cd r = (film * r23 + r12) / den;
  return {r, std::norm(r)};
}

double reflectance(const KretschmannStack& stack, const IncidenceGeometry& geom) {
  return reflection_coefficient(stack, geom).reflectance;
}

cd transfer_matrix_reflection(std::span<const Layer> layers, double k_x, double wavelength_nm) {
  if (layers.size() < 2) throw ValidationError("transfer matrix needs at least 2 layers");

  // TM admittance of each layer is k_z / eps.
  std::vector<cd> q(layers.size());
  std::vector<cd> kz(layers.size());
  for (std::size_t j = 0; j < layers.size(); ++j) {
    kz[j] = wavevector_z(layers[j].eps, k_x, wavelength_nm);
    q[j] = kz[j] / layers[j].eps.value();
  }

  cd m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
  for (std::size_t j = 1; j + 1 < layers.size(); ++j) {
    const cd delta = kz[j] * layers[j].thickness_nm;
    const cd c = std::cos(delta);
    const cd s = std::sin(delta);
    const cd a11 = c;
    const cd a12 = -kI * s / q[j];
    const cd a21 = -kI * q[j] * s;
    const cd a22 = c;
    const cd n11 = m11 * a11 + m12 * a21;
    const cd n12 = m11 * a12 + m12 * a22;
    const cd n21 = m21 * a11 + m22 * a21;
    const cd n22 = m21 * a12 + m22 * a22;
    m11 = n11;
    m12 = n12;
    m21 = n21;
    m22 = n22;
  }

  const cd q_in = q.front();
  const cd q_out = q.back();
  const cd b = (m11 + m12 * q_out) * q_in;
  const cd c = m21 + m22 * q_out;
  if (b + c == cd{0.0, 0.0} || !std::isfinite(std::abs(b + c))) {
    throw SingularityError("singular characteristic matrix in transfer-matrix reflection");
  }
  return (b - c) / (b + c);
}

double resonance_angle(const KretschmannStack& stack, Interval theta_range, double tol_deg, int scan_points) {
  stack.validate();
  return locate_interior_minimum([&](double theta) { return reflectance(stack, IncidenceGeometry{theta}); },
                                 theta_range, tol_deg, scan_points);
}

double sensitivity(const KretschmannStack& stack, const IncidenceGeometry& geom, double n_analyte, double h) {
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  return central_difference([&](double n) { return reflectance(stack.with_analyte(n), geom); }, n_analyte, h);
}

double inflection_index(const KretschmannStack& stack, const IncidenceGeometry& geom, Interval n_range,
                        double tol, double h, int scan_points) {
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  geom.validate();
  // Above n_prism sin(theta) the analyte wave propagates and |r|^2 has a
  // square-root kink, not a plasmon flank.
  const double critical = stack.n_prism * std::sin(geom.theta_rad());
  n_range.hi = std::min(n_range.hi, critical - kCriticalIndexMargin);
  if (!(n_range.hi > n_range.lo)) {
    throw NoInteriorExtremumError(fmt::format("no evanescent analyte indices in range below {}", critical));
  }
  return steepest_point([&](double n) { return reflectance(stack.with_analyte(n), geom); }, n_range, tol, h,
                        scan_points);
}

}  // namespace plasmon
