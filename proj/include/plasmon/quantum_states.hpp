#pragma once

#include <complex>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

namespace plasmon {

/// Default bound on the probability mass lost to Fock-space truncation.
inline constexpr double kDefaultTruncationTolerance = 1e-14;

/// How a constructor chooses the per-mode photon cutoff. Without an explicit
/// cutoff, states with unbounded support grow it until the discarded weight
/// drops below `tolerance`.
struct TruncationPolicy {
  std::optional<int> cutoff;
  double tolerance = kDefaultTruncationTolerance;
};

/// Pure two-mode state sum_{n,m <= cutoff} C_{n,m} |n, m>_{ab}.
///
/// Stored in polar form. Every observable here is number-diagonal and reads
/// only the magnitudes, so replacing the phases never perturbs |C|^2.
class FockCoefficients {
public:
  /// `coeffs` is row-major (n is the mode-a index) of size (cutoff+1)^2.
  /// Throws ValidationError if the squared norm exceeds 1 beyond rounding.
  FockCoefficients(int cutoff, const std::vector<std::complex<double>>& coeffs);
  static FockCoefficients from_polar(int cutoff, std::vector<double> magnitudes, std::vector<double> phases);

  int cutoff() const noexcept { return cutoff_; }
  int dim() const noexcept { return cutoff_ + 1; }
  std::complex<double> at(int n, int m) const { return std::polar(magnitude(n, m), phase(n, m)); }
  double magnitude(int n, int m) const { return magnitudes_[index(n, m)]; }
  double phase(int n, int m) const { return phases_[index(n, m)]; }
  double probability(int n, int m) const {
    const double a = magnitude(n, m);
    return a * a;
  }

  /// Same magnitudes, new phases (row-major, (cutoff+1)^2 entries).
  FockCoefficients with_phases(std::vector<double> phases) const;

  /// 1 - sum |C_{n,m}|^2, accumulated in extended precision.
  double truncation_weight() const noexcept { return truncation_weight_; }

private:
  FockCoefficients() = default;
  std::size_t index(int n, int m) const { return static_cast<std::size_t>(n) * dim() + m; }
  void finish();

  int cutoff_ = 0;
  std::vector<double> magnitudes_;
  std::vector<double> phases_;
  double truncation_weight_ = 0.0;
};

/// |alpha, alpha>: product of identical coherent states.
FockCoefficients coherent_product(std::complex<double> alpha, TruncationPolicy policy = {});
/// |N, N>.
FockCoefficients twin_fock(int photons, std::optional<int> cutoff = {});
/// Two-mode squeezed vacuum with N mean photons per mode.
FockCoefficients tmsv(double mean_photons, TruncationPolicy policy = {});
/// (|2N, 0> + |0, 2N>) / sqrt(2).
FockCoefficients noon(int n, std::optional<int> cutoff = {});
/// Product of two identical single-mode squeezed vacua, N mean photons per
/// mode, squeezing phase `phase`.
FockCoefficients squeezed_product(double mean_photons, TruncationPolicy policy = {}, double phase = 0.0);

/// max_{n,m} | |C_{n,m}| - |C_{m,n}| | <= tol.
bool is_twin_mode(const FockCoefficients& state, double tol = 1e-12);

/// True if C_{n,m} = conj(C_{m,n}) exp(-2 i chi0) for a single constant chi0.
bool is_path_symmetric(const FockCoefficients& state, double tol = 1e-12);

struct PhotonStatistics {
  double mean_a;
  double mean_b;
  double var_a;
  double var_b;
  double covariance;
  double q_mandel;  ///< var_a / mean_a - 1
  double sigma;     ///< Var(n_b - n_a) / (mean_a + mean_b)
  double j_corr;    ///< cov / (std_a std_b); 1 when both variances vanish
};

/// Photon-number moments by direct summation over |C_{n,m}|^2. Throws
/// UndefinedStatisticsError when mode a (or the total) carries no photons.
PhotonStatistics statistics(const FockCoefficients& state);

/// sum n^2 |C_{n,m}|^2: spread along the mode-a axis of the n-m plane.
double horizontal_broadening(const FockCoefficients& state);
/// sum (n - m)^2 |C_{n,m}|^2: spread across the diagonal of the n-m plane.
double antidiagonal_broadening(const FockCoefficients& state);

/// Debug dump `n,m,re,im`, one row per nonzero coefficient.
void write_state_csv(std::ostream& out, const FockCoefficients& state);
FockCoefficients read_state_csv(std::istream& in);

}  // namespace plasmon
