#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "plasmon/fock_oracle.hpp"
#include "plasmon/metrology.hpp"
#include "plasmon/quantum_states.hpp"

namespace plasmon::cli {

namespace {

struct ReferenceState {
  std::string label;
  FockCoefficients state;
  double photons;
  double q_mandel;
  double sigma;
  bool finite_support;
};

std::vector<ReferenceState> reference_states(double tol) {
  const TruncationPolicy policy{std::nullopt, tol};
  std::vector<ReferenceState> out;
  for (double n : {0.5, 1.0, 2.0}) {
    out.push_back({fmt::format("coherent N={}", n), coherent_product(std::sqrt(n), policy), n, 0.0, 1.0, false});
  }
  for (int n : {1, 2, 3}) {
    out.push_back({fmt::format("twin-fock N={}", n), twin_fock(n), double(n), -1.0, 0.0, true});
  }
  for (double n : {0.5, 1.0, 2.0}) {
    out.push_back({fmt::format("tmsv N={}", n), tmsv(n, policy), n, n, 0.0, false});
  }
  for (int n : {1, 2}) {
    out.push_back({fmt::format("noon N={}", n), noon(n), double(n), n - 1.0, 2.0 * n, true});
  }
  for (double n : {0.5, 1.0}) {
    out.push_back(
        {fmt::format("squeezed-product N={}", n), squeezed_product(n, policy), n, 2.0 * n + 1.0, 2.0 * n + 2.0, false});
  }
  return out;
}

double relative(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

std::vector<Layer> three_layers(const KretschmannStack& s, ComplexPermittivity metal) {
  return {{{s.n_prism * s.n_prism, 0.0}, 0.0},
          {metal, s.thickness_nm},
          {{s.n_analyte * s.n_analyte, 0.0}, 0.0}};
}

std::vector<double> open_angle_grid(int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = 90.0 * (i + 0.5) / points;
  return grid;
}

}  // namespace

std::vector<CheckResult> run_validation(const KretschmannStack& stack, const ValidationOptions& options) {
  std::vector<CheckResult> checks;
  const auto states = reference_states(options.truncation_tolerance);
  const double reflectances[] = {0.05, 0.3, 0.5, 0.7, 0.95};
  const ChannelEfficiencies channel_grid[] = {{1.0, 1.0}, {0.8, 0.8}, {0.9, 0.6}};

  double finite_err = 0.0;
  double truncated_err = 0.0;
  double ratio_err = 0.0;
  for (const auto& ref : states) {
    for (double r2 : reflectances) {
      const double r_abs = std::sqrt(r2);
      for (const auto& eff : channel_grid) {
        const auto oracle = oracle_measurement(ref.state, r_abs, eff);
        const double err = std::max(relative(oracle.mean, signal_mean(r_abs, eff, ref.photons)),
                                    relative(oracle.std, signal_std(r_abs, eff, ref.photons, ref.q_mandel, ref.sigma)));
        double& worst = ref.finite_support ? finite_err : truncated_err;
        worst = std::max(worst, err);

        if (eff.is_balanced()) {
          const double brute = oracle_ratio(ref.state, ref.photons, r_abs, eff.eta_a);
          const double closed = detail::ratio_with_offset(r_abs, eff.eta_a, ref.q_mandel, ref.sigma, options.ratio_fault);
          ratio_err = std::max(ratio_err, relative(closed, brute));
        }
      }
    }
  }
  checks.push_back({"moments, finite-support states (rel)", finite_err, 1e-12, finite_err <= 1e-12});
  checks.push_back({"moments, truncated states (rel)", truncated_err, 1e-8, truncated_err <= 1e-8});
  checks.push_back({"precision ratio vs oracle (rel)", ratio_err, 1e-8, ratio_err <= 1e-8});

  // Airy sum against the characteristic-matrix recursion.
  std::mt19937_64 rng(20170915);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<KretschmannStack, ComplexPermittivity>> stacks{
      {stack, evaluate(stack.metal, stack.wavelength_nm)}};
  for (int i = 0; i < 5; ++i) {
    KretschmannStack s = stack;
    s.n_prism = 1.4 + 0.5 * u(rng);
    s.n_analyte = 1.0 + (s.n_prism - 1.05) * u(rng);
    s.thickness_nm = 10.0 + 70.0 * u(rng);
    s.wavelength_nm = 500.0 + 500.0 * u(rng);
    const ComplexPermittivity metal{-40.0 + 35.0 * u(rng), 0.2 + 4.8 * u(rng)};
    s.metal = metal;
    stacks.emplace_back(s, metal);
  }
  double tmm_err = 0.0;
  double thin_err = 0.0;
  for (const auto& [s, metal] : stacks) {
    const auto layers = three_layers(s, metal);
    KretschmannStack bare = s;
    bare.thickness_nm = 0.0;
    for (double theta : open_angle_grid(200)) {
      const IncidenceGeometry geom{theta};
      const auto airy = reflection_coefficient(s, geom).r_sp;
      const auto tmm = transfer_matrix_reflection(layers, tangential_wavevector(s, geom), s.wavelength_nm);
      tmm_err = std::max(tmm_err, std::abs(airy - tmm));

      const double kx = tangential_wavevector(s, geom);
      const ComplexPermittivity e1{s.n_prism * s.n_prism, 0.0};
      const ComplexPermittivity e3{s.n_analyte * s.n_analyte, 0.0};
      const auto r13 = interface_reflection(e1, e3, wavevector_z(e1, kx, s.wavelength_nm),
                                            wavevector_z(e3, kx, s.wavelength_nm));
      thin_err = std::max(thin_err, std::abs(reflection_coefficient(bare, geom).r_sp - r13));
    }
  }
  checks.push_back({"Airy sum vs transfer matrix (abs)", tmm_err, 1e-10, tmm_err <= 1e-10});
  checks.push_back({"zero-thickness film vs direct interface (abs)", thin_err, 1e-12, thin_err <= 1e-12});

  double passivity = 0.0;
  for (int i = 0; i < 1093; ++i) {
    const double n = 1.333 + (1.4422 - 1.333) * i / 1092.0;
    const auto s = stack.with_analyte(n);
    for (double theta : open_angle_grid(180)) {
      const double refl = reflectance(s, IncidenceGeometry{theta});
      passivity = std::max({passivity, refl - 1.0, -refl});
    }
  }
  checks.push_back({"passivity 0 <= |r|^2 <= 1 (violation)", passivity, 0.0, passivity <= 0.0});

  KretschmannStack lossless = stack;
  lossless.metal = ComplexPermittivity{-20.0, 0.0};
  double tir = 0.0;
  const double critical = std::asin(stack.n_analyte / stack.n_prism) * 180.0 / std::numbers::pi;
  for (double theta : open_angle_grid(200)) {
    if (theta <= critical + 0.1) continue;
    tir = std::max(tir, std::abs(reflectance(lossless, IncidenceGeometry{theta}) - 1.0));
  }
  checks.push_back({"lossless total internal reflection |r|^2 = 1 (abs)", tir, 1e-10, tir <= 1e-10});
  return checks;
}

void print_report(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    out << fmt::format("{:<52} max_err={:<12.3e} tol={:<8.1e} {}\n", c.name, c.max_error, c.tolerance,
                       c.passed ? "PASS" : "FAIL");
  }
}

}  // namespace plasmon::cli
