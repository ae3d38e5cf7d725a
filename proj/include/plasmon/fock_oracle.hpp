#pragma once

#include <vector>

#include "plasmon/metrology.hpp"
#include "plasmon/quantum_states.hpp"

// Brute-force reference for the intensity-difference moments. Loss in each arm
// is a beam splitter with a vacuum ancilla, whose exact action on photon
// counts is binomial thinning. Nothing in here uses the closed-form moment
// expressions or the Mandel-Q / sigma statistics.

namespace plasmon {

/// P(k, l) over the two modes' photon numbers.
class JointNumberDistribution {
public:
  JointNumberDistribution(int cutoff, std::vector<double> probs);

  int cutoff() const noexcept { return cutoff_; }
  int dim() const noexcept { return cutoff_ + 1; }
  double at(int k, int l) const { return probs_[static_cast<std::size_t>(k) * dim() + l]; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }
  /// 1 - sum P.
  double leakage() const noexcept { return leakage_; }

private:
  int cutoff_;
  std::vector<double> probs_;
  double leakage_;
};

/// P(n, m) = |C_{n,m}|^2.
JointNumberDistribution joint_distribution(const FockCoefficients& state);

/// Independent binomial thinning of both modes with intensity transmittances
/// `t_a` and `t_b`.
JointNumberDistribution binomial_thinning(const JointNumberDistribution& dist, double t_a, double t_b);

/// Moments of n_b - n_a after thinning with T_a = |r|^2 eta_a^2, T_b = eta_b^2.
MeasurementStats oracle_measurement(const FockCoefficients& state, double r_abs, const ChannelEfficiencies& eff);

/// Noise of the product coherent state with |alpha|^2 = `reference_photons`
/// divided by the noise of `state`, both by brute force. Throws
/// DivergenceError when the state's noise vanishes.
double oracle_ratio(const FockCoefficients& state, double reference_photons, double r_abs, double eta);

}  // namespace plasmon
