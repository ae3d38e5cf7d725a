#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "plasmon/error.hpp"
#include "plasmon/materials.hpp"

namespace plasmon::cli {

std::vector<double> Grid::points() const {
  if (steps < 1) throw ConfigError(fmt::format("grid needs at least one point, got {}", steps));
  if (!(max >= min)) throw ConfigError(fmt::format("grid range [{}, {}] is empty", min, max));
  if (steps == 1) return {min};
  std::vector<double> out(steps);
  const double step = (max - min) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[i] = (i == steps - 1) ? max : min + i * step;
  return out;
}

namespace {

template <typename T>
T get(const nlohmann::json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(fmt::format("config key '{}' has the wrong type", key));
  }
}

template <typename T>
std::vector<T> get_list(const nlohmann::json& value, const std::string& key) {
  if (value.is_array()) return get<std::vector<T>>(value, key);
  return {get<T>(value, key)};
}

}  // namespace

void RunConfig::merge_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_prism") n_prism = get<double>(value, key);
    else if (key == "thickness_nm") thickness_nm = get<double>(value, key);
    else if (key == "wavelength_nm") wavelength_nm = get<double>(value, key);
    else if (key == "dispersion") dispersion = get<std::string>(value, key);
    else if (key == "metal_model") metal_model = get<std::string>(value, key);
    else if (key == "theta_deg") theta_deg = get<double>(value, key);
    else if (key == "theta_min") theta_grid.min = get<double>(value, key);
    else if (key == "theta_max") theta_grid.max = get<double>(value, key);
    else if (key == "theta_steps") theta_grid.steps = get<int>(value, key);
    else if (key == "n_min") n_grid.min = get<double>(value, key);
    else if (key == "n_max") n_grid.max = get<double>(value, key);
    else if (key == "n_steps") n_grid.steps = get<int>(value, key);
    else if (key == "n_analyte") n_analyte = get_list<double>(value, key);
    else if (key == "state" || key == "states") states = get_list<std::string>(value, key);
    else if (key == "photons") photons = get_list<double>(value, key);
    else if (key == "eta") etas = get_list<double>(value, key);
    else if (key == "eta_a") eta_a = get<double>(value, key);
    else if (key == "eta_b") eta_b = get<double>(value, key);
    else if (key == "h") h = get<double>(value, key);
    else if (key == "tol_deg") tol_deg = get<double>(value, key);
    else if (key == "tol_n") tol_n = get<double>(value, key);
    else if (key == "scan_points") scan_points = get<int>(value, key);
    else if (key == "truncation_tolerance") truncation_tolerance = get<double>(value, key);
    else if (key == "out") out = get<std::string>(value, key);
    else if (key == "format") format = parse_format(get<std::string>(value, key));
    else throw ConfigError(fmt::format("unknown config key '{}'", key));
  }
}

void RunConfig::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config file '{}': {}", path.string(), e.what()));
  }
  merge_json(doc);
}

namespace {

std::filesystem::path resolve_dispersion(const std::string& name) {
  const std::filesystem::path direct(name);
  if (std::filesystem::exists(direct)) return direct;
  if (direct.is_relative()) {
    if (const char* dir = std::getenv("PLASMON_DISPERSION_DIR"); dir != nullptr && *dir != '\0') {
      const auto candidate = std::filesystem::path(dir) / direct;
      if (std::filesystem::exists(candidate)) return candidate;
    }
  }
  throw ConfigError(fmt::format("dispersion file '{}' not found (also searched $PLASMON_DISPERSION_DIR)", name));
}

}  // namespace

KretschmannStack RunConfig::stack(double n) const {
  KretschmannStack s;
  s.n_prism = n_prism;
  s.thickness_nm = thickness_nm;
  s.wavelength_nm = wavelength_nm;
  s.n_analyte = n;
  if (!dispersion.empty()) {
    const auto path = resolve_dispersion(dispersion);
    try {
      s.metal = load_dispersion_file(path);
    } catch (const Error& e) {
      throw ConfigError(fmt::format("dispersion file '{}': {}", path.string(), e.what()));
    }
  } else if (metal_model == "table") {
    s.metal = bundled_gold_table();
  } else if (metal_model == "drude-lorentz") {
    s.metal = DrudeLorentzParams::gold_rakic();
  } else {
    throw ConfigError(fmt::format("unknown metal model '{}' (table | drude-lorentz)", metal_model));
  }
  try {
    s.validate();
    evaluate(s.metal, wavelength_nm);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return s;
}

std::optional<ChannelEfficiencies> RunConfig::explicit_efficiencies() const {
  if (!eta_a && !eta_b) return std::nullopt;
  if (!eta_a || !eta_b) throw ConfigError("--eta-a and --eta-b must be given together");
  ChannelEfficiencies eff{*eta_a, *eta_b};
  try {
    eff.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return eff;
}

FockCoefficients make_state(const std::string& family, double photons, double truncation_tolerance) {
  const auto as_count = [&](int minimum) {
    if (photons != std::floor(photons) || photons < minimum) {
      throw ConfigError(fmt::format("state '{}' needs an integer photon number >= {}, got {}", family, minimum,
                                    photons));
    }
    return static_cast<int>(photons);
  };
  const TruncationPolicy policy{std::nullopt, truncation_tolerance};
  if (!(photons >= 0.0)) throw ConfigError(fmt::format("photon number must be >= 0, got {}", photons));
  if (family == "coherent") return coherent_product(std::sqrt(photons), policy);
  if (family == "twin-fock") return twin_fock(as_count(0));
  if (family == "tmsv") return tmsv(photons, policy);
  if (family == "noon") return noon(as_count(1));
  if (family == "squeezed-product") return squeezed_product(photons, policy);
  throw ConfigError(
      fmt::format("unknown state '{}' (coherent | twin-fock | tmsv | noon | squeezed-product)", family));
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError(fmt::format("unknown output format '{}' (csv | json)", text));
}

}  // namespace plasmon::cli
