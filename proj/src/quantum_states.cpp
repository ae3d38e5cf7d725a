#include "plasmon/quantum_states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "plasmon/error.hpp"

namespace plasmon {

namespace {

using cd = std::complex<double>;

constexpr int kMaxCutoff = 4000;

// How the per-mode amplitudes are assembled into the two-mode state: as an
// outer product a_n a_m, or on the diagonal only (C_{n,n} = a_n).
enum class Layout { product, diagonal };

// Appends amplitudes via `next(n, a_{n-1})` until the discarded weight of the
// assembled state is below tolerance, or up to the explicit cutoff.
template <typename Next>
std::vector<cd> grow_amplitudes(cd vacuum_amplitude, Next next, const TruncationPolicy& policy, Layout layout,
                                const char* family) {
  if (!(policy.tolerance > 0.0)) throw ValidationError("truncation tolerance must be positive");
  std::vector<cd> amps{vacuum_amplitude};
  long double kept = std::norm(vacuum_amplitude);

  const auto joint_loss = [&] {
    return static_cast<double>(layout == Layout::product ? 1.0L - kept * kept : 1.0L - kept);
  };
  const int limit = policy.cutoff.value_or(kMaxCutoff);
  if (limit < 0) throw ValidationError("cutoff must be non-negative");

  for (int n = 1; n <= limit; ++n) {
    if (!policy.cutoff && joint_loss() < policy.tolerance) break;
    amps.push_back(next(n, amps.back()));
    kept += std::norm(amps.back());
  }
  if (joint_loss() >= policy.tolerance) {
    throw TruncationError(fmt::format("{} state loses {:.3g} of its norm at cutoff {} (tolerance {:.3g}); "
                                      "increase the cutoff",
                                      family, joint_loss(), amps.size() - 1, policy.tolerance));
  }
  return amps;
}

FockCoefficients outer_product(const std::vector<cd>& a, const std::vector<cd>& b) {
  const int cutoff = static_cast<int>(a.size()) - 1;
  std::vector<cd> coeffs(a.size() * b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (std::size_t m = 0; m < b.size(); ++m) coeffs[n * b.size() + m] = a[n] * b[m];
  }
  return FockCoefficients(cutoff, coeffs);
}

void require_mean(double mean_photons, const char* family) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw ValidationError(fmt::format("{}: mean photon number must be finite and >= 0, got {}", family,
                                      mean_photons));
  }
}

int checked_cutoff(std::optional<int> cutoff, int needed, const char* family) {
  const int c = cutoff.value_or(needed);
  if (c < needed) {
    throw CapacityError(fmt::format("{} needs cutoff >= {}, got {}", family, needed, c));
  }
  if (c > kMaxCutoff) throw CapacityError(fmt::format("cutoff {} exceeds the supported maximum", c));
  return c;
}

}  // namespace

FockCoefficients::FockCoefficients(int cutoff, const std::vector<cd>& coeffs) : cutoff_(cutoff) {
  if (cutoff_ < 0) throw ValidationError("cutoff must be non-negative");
  magnitudes_.reserve(coeffs.size());
  phases_.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    magnitudes_.push_back(std::abs(c));
    phases_.push_back(std::arg(c));
  }
  finish();
}

FockCoefficients FockCoefficients::from_polar(int cutoff, std::vector<double> magnitudes,
                                              std::vector<double> phases) {
  if (cutoff < 0) throw ValidationError("cutoff must be non-negative");
  FockCoefficients s;
  s.cutoff_ = cutoff;
  s.magnitudes_ = std::move(magnitudes);
  s.phases_ = std::move(phases);
  for (double a : s.magnitudes_) {
    if (a < 0.0) throw ValidationError("negative coefficient magnitude");
  }
  s.finish();
  return s;
}

FockCoefficients FockCoefficients::with_phases(std::vector<double> phases) const {
  return from_polar(cutoff_, magnitudes_, std::move(phases));
}

void FockCoefficients::finish() {
  const auto expected = static_cast<std::size_t>(dim()) * dim();
  if (magnitudes_.size() != expected || phases_.size() != expected) {
    throw ValidationError(fmt::format("expected {} coefficients for cutoff {}, got {}", expected, cutoff_,
                                      magnitudes_.size()));
  }
  long double norm = 0.0L;
  for (std::size_t i = 0; i < expected; ++i) {
    if (!std::isfinite(magnitudes_[i]) || !std::isfinite(phases_[i])) {
      throw ValidationError("non-finite coefficient");
    }
    norm += static_cast<long double>(magnitudes_[i]) * magnitudes_[i];
  }
  const double weight = static_cast<double>(1.0L - norm);
  if (weight < -1e-12) throw ValidationError(fmt::format("state norm exceeds 1 by {:.3g}", -weight));
  truncation_weight_ = std::max(weight, 0.0);
}

FockCoefficients coherent_product(cd alpha, TruncationPolicy policy) {
  const cd vacuum = std::exp(-0.5 * std::norm(alpha));
  const auto amps = grow_amplitudes(
      vacuum, [&](int n, cd prev) { return prev * alpha / std::sqrt(static_cast<double>(n)); }, policy,
      Layout::product, "coherent product");
  return outer_product(amps, amps);
}

FockCoefficients twin_fock(int photons, std::optional<int> cutoff) {
  if (photons < 0) throw ValidationError("twin Fock photon number must be >= 0");
  const int c = checked_cutoff(cutoff, photons, "twin Fock");
  std::vector<cd> coeffs(static_cast<std::size_t>(c + 1) * (c + 1));
  coeffs[static_cast<std::size_t>(photons) * (c + 1) + photons] = 1.0;
  return FockCoefficients(c, coeffs);
}

FockCoefficients tmsv(double mean_photons, TruncationPolicy policy) {
  require_mean(mean_photons, "TMSV");
  // lambda = tanh r with sinh^2 r = N
  const double lambda = std::sqrt(mean_photons / (1.0 + mean_photons));
  const auto diag = grow_amplitudes(
      cd{std::sqrt(1.0 / (1.0 + mean_photons))}, [&](int, cd prev) { return prev * lambda; }, policy,
      Layout::diagonal, "TMSV");
  const int c = static_cast<int>(diag.size()) - 1;
  std::vector<cd> coeffs(static_cast<std::size_t>(c + 1) * (c + 1));
  for (int n = 0; n <= c; ++n) coeffs[static_cast<std::size_t>(n) * (c + 1) + n] = diag[n];
  return FockCoefficients(c, coeffs);
}

FockCoefficients noon(int n, std::optional<int> cutoff) {
  if (n < 1) throw ValidationError("NOON photon number must be >= 1");
  const int c = checked_cutoff(cutoff, 2 * n, "NOON");
  std::vector<cd> coeffs(static_cast<std::size_t>(c + 1) * (c + 1));
  const double amp = 1.0 / std::sqrt(2.0);
  coeffs[static_cast<std::size_t>(2 * n) * (c + 1)] = amp;
  coeffs[static_cast<std::size_t>(2 * n)] = amp;
  return FockCoefficients(c, coeffs);
}

FockCoefficients squeezed_product(double mean_photons, TruncationPolicy policy, double phase) {
  require_mean(mean_photons, "squeezed product");
  const double cosh_r = std::sqrt(1.0 + mean_photons);
  const double tanh_r = std::sqrt(mean_photons / (1.0 + mean_photons));
  const cd factor = -std::polar(tanh_r, phase);
  // s_{2k} / s_{2k-2} = -e^{i phase} tanh r sqrt((2k-1)/(2k)); odd amplitudes vanish.
  cd last_even = 1.0 / std::sqrt(cosh_r);
  const auto amps = grow_amplitudes(
      last_even,
      [&](int n, cd) -> cd {
        if (n % 2 == 1) return 0.0;
        last_even *= factor * std::sqrt(static_cast<double>(n - 1) / n);
        return last_even;
      },
      policy, Layout::product, "squeezed product");
  return outer_product(amps, amps);
}

bool is_twin_mode(const FockCoefficients& state, double tol) {
  for (int n = 0; n <= state.cutoff(); ++n) {
    for (int m = n + 1; m <= state.cutoff(); ++m) {
      if (std::abs(state.magnitude(n, m) - state.magnitude(m, n)) > tol) return false;
    }
  }
  return true;
}

bool is_path_symmetric(const FockCoefficients& state, double tol) {
  // Fix exp(-2 i chi0) from the largest coefficient, then test every entry.
  int bn = 0, bm = 0;
  for (int n = 0; n <= state.cutoff(); ++n) {
    for (int m = 0; m <= state.cutoff(); ++m) {
      if (std::abs(state.at(n, m)) > std::abs(state.at(bn, bm))) {
        bn = n;
        bm = m;
      }
    }
  }
  if (std::abs(state.at(bm, bn)) == 0.0) return std::abs(state.at(bn, bm)) <= tol;
  cd phase = state.at(bn, bm) / std::conj(state.at(bm, bn));
  phase /= std::abs(phase);
  for (int n = 0; n <= state.cutoff(); ++n) {
    for (int m = 0; m <= state.cutoff(); ++m) {
      if (std::abs(state.at(n, m) - std::conj(state.at(m, n)) * phase) > tol) return false;
    }
  }
  return true;
}

PhotonStatistics statistics(const FockCoefficients& state) {
  const int d = state.dim();
  long double mean_a = 0.0L, mean_b = 0.0L;
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const long double p = state.probability(n, m);
      mean_a += n * p;
      mean_b += m * p;
    }
  }
  if (!(mean_a > 0.0L)) {
    throw UndefinedStatisticsError("photon statistics undefined: mode a carries no photons");
  }

  long double var_a = 0.0L, var_b = 0.0L, cov = 0.0L, var_diff = 0.0L;
  const long double mean_diff = mean_b - mean_a;
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const long double p = state.probability(n, m);
      if (p == 0.0L) continue;
      const long double da = n - mean_a;
      const long double db = m - mean_b;
      const long double dd = (m - n) - mean_diff;
      var_a += da * da * p;
      var_b += db * db * p;
      cov += da * db * p;
      var_diff += dd * dd * p;
    }
  }

  PhotonStatistics s{};
  s.mean_a = static_cast<double>(mean_a);
  s.mean_b = static_cast<double>(mean_b);
  s.var_a = static_cast<double>(var_a);
  s.var_b = static_cast<double>(var_b);
  s.covariance = static_cast<double>(cov);
  s.q_mandel = static_cast<double>(var_a / mean_a - 1.0L);
  s.sigma = static_cast<double>(var_diff / (mean_a + mean_b));

  const auto vanishes = [](long double var, long double mean) { return var <= 1e-12L * std::max(1.0L, mean * mean); };
  const bool flat_a = vanishes(var_a, mean_a);
  const bool flat_b = vanishes(var_b, mean_b);
  if (flat_a && flat_b) {
    s.j_corr = 1.0;
  } else if (flat_a || flat_b) {
    s.j_corr = 0.0;
  } else {
    s.j_corr = static_cast<double>(cov / std::sqrt(var_a * var_b));
  }
  return s;
}

double horizontal_broadening(const FockCoefficients& state) {
  long double acc = 0.0L;
  for (int n = 0; n < state.dim(); ++n) {
    for (int m = 0; m < state.dim(); ++m) acc += static_cast<long double>(n) * n * state.probability(n, m);
  }
  return static_cast<double>(acc);
}

double antidiagonal_broadening(const FockCoefficients& state) {
  long double acc = 0.0L;
  for (int n = 0; n < state.dim(); ++n) {
    for (int m = 0; m < state.dim(); ++m) {
      acc += static_cast<long double>(n - m) * (n - m) * state.probability(n, m);
    }
  }
  return static_cast<double>(acc);
}

void write_state_csv(std::ostream& out, const FockCoefficients& state) {
  out << "n,m,re,im\n";
  for (int n = 0; n < state.dim(); ++n) {
    for (int m = 0; m < state.dim(); ++m) {
      if (state.magnitude(n, m) == 0.0) continue;
      const cd c = state.at(n, m);
      out << fmt::format("{},{},{},{}\n", n, m, c.real(), c.imag());
    }
  }
}

FockCoefficients read_state_csv(std::istream& in) {
  struct Row {
    int n, m;
    cd c;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  int cutoff = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line_no == 1 && line.starts_with("n,")) continue;
    std::istringstream cells(line);
    Row r{};
    char c1 = 0, c2 = 0, c3 = 0;
    double re = 0.0, im = 0.0;
    if (!(cells >> r.n >> c1 >> r.m >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw ParseError(line_no, "expected n,m,re,im");
    }
    if (r.n < 0 || r.m < 0) throw ParseError(line_no, "negative photon number");
    r.c = {re, im};
    cutoff = std::max({cutoff, r.n, r.m});
    rows.push_back(r);
  }
  if (cutoff > kMaxCutoff) throw CapacityError("state dump exceeds the supported cutoff");
  std::vector<cd> coeffs(static_cast<std::size_t>(cutoff + 1) * (cutoff + 1));
  for (const auto& r : rows) coeffs[static_cast<std::size_t>(r.n) * (cutoff + 1) + r.m] = r.c;
  return FockCoefficients(cutoff, coeffs);
}

}  // namespace plasmon
