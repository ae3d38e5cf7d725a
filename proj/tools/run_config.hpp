#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plasmon/fresnel.hpp"
#include "plasmon/metrology.hpp"
#include "plasmon/quantum_states.hpp"
#include "plasmon/records.hpp"

namespace plasmon::cli {

/// Bad flags, bad config file, unreadable input. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct Grid {
  double min;
  double max;
  int steps;

  std::vector<double> points() const;
};

/// Everything a command needs. Defaults are the reference operating point of
/// the sensor: BK7-like prism, 810 nm, 50 nm gold, 73 degrees.
struct RunConfig {
  double n_prism = 1.5107;
  double thickness_nm = 50.0;
  double wavelength_nm = 810.0;
  std::string dispersion;                // CSV path; empty -> bundled gold table
  std::string metal_model = "table";     // table | drude-lorentz

  double theta_deg = 73.0;
  Grid theta_grid{65.5, 83.5, 361};
  Grid n_grid{1.333, 1.4422, 1093};
  std::vector<double> n_analyte{1.39, 1.395};

  std::vector<std::string> states;       // empty -> command default
  std::vector<double> photons;           // empty -> command default
  std::vector<double> etas;              // empty -> {1}
  std::optional<double> eta_a;
  std::optional<double> eta_b;

  double h = kDefaultIndexStep;
  double tol_deg = 1e-6;
  double tol_n = 1e-7;
  int scan_points = kDefaultScanPoints;
  double truncation_tolerance = kDefaultTruncationTolerance;

  std::string out = "-";
  OutputFormat format = OutputFormat::csv;
  bool inject_fault = false;

  /// Applies keys of a flat JSON object. Unknown keys are an error.
  void merge_json(const nlohmann::json& doc);
  void merge_file(const std::filesystem::path& path);

  /// Resolves the metal model and assembles the stack for `n_analyte`.
  KretschmannStack stack(double n_analyte) const;
  std::optional<ChannelEfficiencies> explicit_efficiencies() const;
};

/// Named twin-mode state family at N photons per mode.
FockCoefficients make_state(const std::string& family, double photons, double truncation_tolerance);

OutputFormat parse_format(const std::string& text);

}  // namespace plasmon::cli
