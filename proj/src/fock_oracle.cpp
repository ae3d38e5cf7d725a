#include "plasmon/fock_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "plasmon/error.hpp"

namespace plasmon {

namespace {

// Row n holds Binomial(n, t) probabilities for k = 0..n, built with the
// Pascal recurrence B(n,k) = t B(n-1,k-1) + (1-t) B(n-1,k). All terms are
// non-negative, so there is no cancellation, and t in {0, 1} is exact.
std::vector<std::vector<double>> binomial_rows(int max_n, double t) {
  std::vector<std::vector<double>> rows(max_n + 1);
  rows[0] = {1.0};
  for (int n = 1; n <= max_n; ++n) {
    const auto& prev = rows[n - 1];
    auto& row = rows[n];
    row.assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
      const double stay = k < n ? (1.0 - t) * prev[k] : 0.0;
      const double pass = k > 0 ? t * prev[k - 1] : 0.0;
      row[k] = stay + pass;
    }
  }
  return rows;
}

void require_transmittance(double t, const char* name) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError(fmt::format("{} must lie in [0, 1], got {}", name, t));
}

}  // namespace

JointNumberDistribution::JointNumberDistribution(int cutoff, std::vector<double> probs)
    : cutoff_(cutoff), probs_(std::move(probs)) {
  if (cutoff_ < 0) throw ValidationError("cutoff must be non-negative");
  if (probs_.size() != static_cast<std::size_t>(dim()) * dim()) {
    throw ValidationError("joint distribution size does not match its cutoff");
  }
  long double total = 0.0L;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ValidationError("joint distribution has a negative entry");
    total += p;
  }
  leakage_ = static_cast<double>(1.0L - total);
  if (leakage_ < -1e-12) throw ValidationError("joint distribution sums above 1");
}

JointNumberDistribution joint_distribution(const FockCoefficients& state) {
  std::vector<double> probs(static_cast<std::size_t>(state.dim()) * state.dim());
  for (int n = 0; n < state.dim(); ++n) {
    for (int m = 0; m < state.dim(); ++m) probs[static_cast<std::size_t>(n) * state.dim() + m] = state.probability(n, m);
  }
  return JointNumberDistribution(state.cutoff(), std::move(probs));
}

JointNumberDistribution binomial_thinning(const JointNumberDistribution& dist, double t_a, double t_b) {
  require_transmittance(t_a, "T_a");
  require_transmittance(t_b, "T_b");
  const int d = dist.dim();
  const auto ba = binomial_rows(dist.cutoff(), t_a);
  const auto bb = binomial_rows(dist.cutoff(), t_b);

  // Thin mode a (rows) first, then mode b (columns); the channels act on
  // different modes, so the two passes commute.
  std::vector<double> half(static_cast<std::size_t>(d) * d, 0.0);
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const double p = dist.at(n, m);
      if (p == 0.0) continue;
      for (int k = 0; k <= n; ++k) half[static_cast<std::size_t>(k) * d + m] += p * ba[n][k];
    }
  }
  std::vector<double> out(static_cast<std::size_t>(d) * d, 0.0);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      const double p = half[static_cast<std::size_t>(k) * d + m];
      if (p == 0.0) continue;
      for (int l = 0; l <= m; ++l) out[static_cast<std::size_t>(k) * d + l] += p * bb[m][l];
    }
  }
  return JointNumberDistribution(dist.cutoff(), std::move(out));
}

MeasurementStats oracle_measurement(const FockCoefficients& state, double r_abs, const ChannelEfficiencies& eff) {
  if (!(r_abs >= 0.0 && r_abs <= 1.0)) throw ValidationError(fmt::format("|r_sp| must lie in [0, 1], got {}", r_abs));
  eff.validate();
  const auto thinned = binomial_thinning(joint_distribution(state), r_abs * r_abs * eff.eta_a * eff.eta_a,
                                         eff.eta_b * eff.eta_b);
  const int d = thinned.dim();

  long double mean = 0.0L;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) mean += static_cast<long double>(l - k) * thinned.at(k, l);
  }
  long double var = 0.0L;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const long double dev = (l - k) - mean;
      var += dev * dev * thinned.at(k, l);
    }
  }
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(std::max(var, 0.0L)))};
}

double oracle_ratio(const FockCoefficients& state, double reference_photons, double r_abs, double eta) {
  const auto eff = ChannelEfficiencies::balanced(eta);
  const auto reference = coherent_product(std::sqrt(reference_photons));
  const double probe_std = oracle_measurement(state, r_abs, eff).std;
  const double reference_std = oracle_measurement(reference, r_abs, eff).std;
  if (probe_std == 0.0) {
    throw DivergenceError(fmt::format("state noise vanishes at |r_sp| = {}, eta = {}", r_abs, eta));
  }
  return reference_std / probe_std;
}

}  // namespace plasmon
