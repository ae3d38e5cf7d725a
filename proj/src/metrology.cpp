#include "plasmon/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "plasmon/error.hpp"

namespace plasmon {

namespace {

void require_reflection_amplitude(double r_abs) {
  if (!(r_abs >= 0.0 && r_abs <= 1.0)) {
    throw ValidationError(fmt::format("|r_sp| must lie in [0, 1], got {}", r_abs));
  }
}

void require_photons(double photons) {
  if (!(photons >= 0.0) || !std::isfinite(photons)) {
    throw ValidationError(fmt::format("photon number must be finite and >= 0, got {}", photons));
  }
}

}  // namespace

void ChannelEfficiencies::validate() const {
  if (!(eta_a >= 0.0 && eta_a <= 1.0) || !(eta_b >= 0.0 && eta_b <= 1.0)) {
    throw ValidationError(fmt::format("channel efficiencies must lie in [0, 1], got ({}, {})", eta_a, eta_b));
  }
}

double signal_mean(double r_abs, const ChannelEfficiencies& eff, double photons) {
  require_reflection_amplitude(r_abs);
  require_photons(photons);
  eff.validate();
  return (eff.eta_b * eff.eta_b - r_abs * r_abs * eff.eta_a * eff.eta_a) * photons;
}

double signal_std(double r_abs, const ChannelEfficiencies& eff, double photons, double q_mandel, double sigma) {
  require_reflection_amplitude(r_abs);
  require_photons(photons);
  eff.validate();
  const double ta = r_abs * r_abs * eff.eta_a * eff.eta_a;
  const double tb = eff.eta_b * eff.eta_b;
  const double imbalance = tb - ta;
  const double radicand = imbalance * imbalance * q_mandel + 2.0 * ta * tb * sigma + tb + ta * (1.0 - 2.0 * tb);
  // Rounding can leave exact zeros (e.g. |N,N> at |r| = 1) slightly negative.
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(q_mandel) + std::abs(sigma));
  if (radicand < -slack || std::isnan(radicand)) {
    throw DomainError(fmt::format("negative variance radicand {} (Q={}, sigma={})", radicand, q_mandel, sigma));
  }
  return std::sqrt(photons) * std::sqrt(std::max(radicand, 0.0));
}

namespace detail {

double ratio_with_offset(double r_abs, double eta, double q_mandel, double sigma, double denominator_offset) {
  require_reflection_amplitude(r_abs);
  ChannelEfficiencies::balanced(eta).validate();
  const double r2 = r_abs * r_abs;
  const double e2 = eta * eta;
  const double den = (1.0 - r2) * (1.0 - r2) * e2 * q_mandel + 2.0 * r2 * e2 * sigma + 1.0 + r2 * (1.0 - 2.0 * e2) +
                     denominator_offset;
  if (!(den > 0.0)) {
    throw DomainError(fmt::format("non-positive ratio denominator {} (|r|={}, eta={}, Q={}, sigma={})", den, r_abs,
                                  eta, q_mandel, sigma));
  }
  return std::sqrt((1.0 + r2) / den);
}

}  // namespace detail

double ratio(double r_abs, double eta, double q_mandel, double sigma) {
  return detail::ratio_with_offset(r_abs, eta, q_mandel, sigma, 0.0);
}

double ratio(double r_abs, const ChannelEfficiencies& eff, double q_mandel, double sigma) {
  if (!eff.is_balanced()) {
    throw ValidationError(
        fmt::format("the precision ratio needs balanced efficiencies, got ({}, {})", eff.eta_a, eff.eta_b));
  }
  return ratio(r_abs, eff.eta_a, q_mandel, sigma);
}

double ratio_twin_fock(double r_abs) {
  if (!(r_abs > 0.0 && r_abs < 1.0)) {
    throw DivergenceError(fmt::format("twin Fock ratio diverges at |r_sp| = {}", r_abs));
  }
  const double r2 = r_abs * r_abs;
  return std::sqrt((1.0 + r2) / (r2 - r2 * r2));
}

double ratio_tmsv(double r_abs, double photons) {
  require_reflection_amplitude(r_abs);
  require_photons(photons);
  const double r2 = r_abs * r_abs;
  const double den = 1.0 - r2 + photons * (1.0 - r2) * (1.0 - r2);
  if (!(den > 0.0)) throw DomainError(fmt::format("TMSV ratio denominator vanishes at |r_sp| = {}", r_abs));
  return std::sqrt((1.0 + r2) / den);
}

PrecisionResult precision(const KretschmannStack& stack, const IncidenceGeometry& geom, double n,
                          const PhotonStatistics& state, const ChannelEfficiencies& eff, double h) {
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  const double photons = state.mean_a;
  const auto mean_at = [&](double index) {
    return signal_mean(reflection_coefficient(stack.with_analyte(index), geom).amplitude(), eff, photons);
  };
  const double slope = central_difference(mean_at, n, h);
  if (slope == 0.0 || !std::isfinite(slope)) {
    throw DegenerateOperatingPointError(fmt::format("signal slope vanishes at n_analyte = {}", n));
  }
  const double r_abs = reflection_coefficient(stack.with_analyte(n), geom).amplitude();
  const double noise = signal_std(r_abs, eff, photons, state.q_mandel, state.sigma);
  return {noise / std::abs(slope), slope, noise};
}

std::vector<RatioPoint> sweep_ratio(const KretschmannStack& stack, const IncidenceGeometry& geom,
                                    const std::vector<double>& n_grid, const PhotonStatistics& state, double eta) {
  std::vector<RatioPoint> out;
  out.reserve(n_grid.size());
  for (double n : n_grid) {
    RatioPoint p{n, std::nullopt, {}};
    try {
      const double r_abs = reflection_coefficient(stack.with_analyte(n), geom).amplitude();
      p.ratio = ratio(r_abs, eta, state.q_mandel, state.sigma);
    } catch (const Error& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

PrecisionSweep sweep_precision_vs_angle(const KretschmannStack& stack, const std::vector<double>& theta_grid,
                                        const std::vector<NamedState>& states, double eta,
                                        const InflectionSearch& search) {
  return sweep_precision_vs_angle(stack, theta_grid, states, ChannelEfficiencies::balanced(eta), search);
}

PrecisionSweep sweep_precision_vs_angle(const KretschmannStack& stack, const std::vector<double>& theta_grid,
                                        const std::vector<NamedState>& states, const ChannelEfficiencies& eff,
                                        const InflectionSearch& search) {
  eff.validate();
  PrecisionSweep sweep;
  for (double theta : theta_grid) {
    const IncidenceGeometry geom{theta};
    double n_inf = 0.0;
    try {
      n_inf = inflection_index(stack, geom, search.n_range, search.tol, search.h, search.scan_points);
    } catch (const NoInteriorExtremumError& e) {
      sweep.skipped.push_back({theta, e.what()});
      continue;
    }
    for (const auto& s : states) {
      const auto p = precision(stack, geom, n_inf, s.stats, eff, search.h);
      sweep.rows.push_back({theta, n_inf, s.name, s.stats.mean_a, eff, p.delta_n, p.signal_slope, p.noise});
    }
  }
  return sweep;
}

}  // namespace plasmon
