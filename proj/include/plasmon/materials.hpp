#pragma once

#include <complex>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace plasmon {

/// Relative permittivity under the exp(-i w t) convention: im >= 0 for a
/// lossy medium.
struct ComplexPermittivity {
  double re = 1.0;
  double im = 0.0;

  std::complex<double> value() const noexcept { return {re, im}; }
  static ComplexPermittivity from(std::complex<double> eps) noexcept { return {eps.real(), eps.imag()}; }
  static ComplexPermittivity from_index(double n, double k) noexcept {
    return from(std::complex<double>(n, k) * std::complex<double>(n, k));
  }
};

struct DispersionEntry {
  double wavelength_nm;
  double n;
  double k;
};

/// Tabulated complex refractive index of a passive medium.
///
/// Entries are kept sorted by wavelength. Construction rejects fewer than two
/// rows, duplicate wavelengths, non-finite values and negative extinction.
class DispersionTable {
public:
  DispersionTable(std::vector<DispersionEntry> entries, std::string source_label);

  const std::vector<DispersionEntry>& entries() const noexcept { return *entries_; }
  const std::string& source_label() const noexcept { return *label_; }
  double min_wavelength() const noexcept { return entries_->front().wavelength_nm; }
  double max_wavelength() const noexcept { return entries_->back().wavelength_nm; }

private:
  // Immutable after construction; copies share storage.
  std::shared_ptr<const std::vector<DispersionEntry>> entries_;
  std::shared_ptr<const std::string> label_;
};

enum class DispersionFormat { csv };

/// Reads `wavelength_nm,n,k` rows. One leading header line (first token not
/// numeric) is allowed; blank lines and lines starting with `#` are skipped.
DispersionTable load_dispersion(std::istream& source, DispersionFormat format = DispersionFormat::csv,
                                std::string source_label = "stream");
DispersionTable load_dispersion_file(const std::filesystem::path& path);

/// Johnson & Christy gold table shipped with the library.
const DispersionTable& bundled_gold_table();

/// eps = (n + i k)^2 with n and k interpolated linearly in wavelength.
/// Throws OutOfRangeError outside [min_wavelength, max_wavelength].
ComplexPermittivity permittivity_at(const DispersionTable& table, double wavelength_nm);

struct LorentzOscillator {
  double strength;       // dimensionless, multiplies w_j^2
  double resonance;      // rad/s
  double width;          // rad/s
};

struct DrudeLorentzParams {
  double plasma_frequency;   // rad/s
  double damping_rate;       // rad/s
  std::vector<LorentzOscillator> oscillators;
  double epsilon_infinity = 1.0;

  void validate() const;

  /// Rakic et al. (1998) Lorentz-Drude fit for gold, rewritten for the
  /// f_j w_j^2 oscillator normalisation used here.
  static DrudeLorentzParams gold_rakic();
};

/// eps_inf - wp^2 / (w^2 + i g w) + sum_j f_j wj^2 / (wj^2 - w^2 - i G_j w),
/// with w = 2 pi c / lambda.
ComplexPermittivity drude_lorentz_permittivity(const DrudeLorentzParams& params, double wavelength_nm);

/// Angular frequency (rad/s) of vacuum wavelength `wavelength_nm`.
double angular_frequency(double wavelength_nm);

/// Anything that yields the metal permittivity at a wavelength.
using MetalModel = std::variant<DispersionTable, DrudeLorentzParams, ComplexPermittivity>;

ComplexPermittivity evaluate(const MetalModel& model, double wavelength_nm);

}  // namespace plasmon
