#include "plasmon/materials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "plasmon/bundled_gold.hpp"
#include "plasmon/error.hpp"

namespace plasmon {

namespace {

constexpr double kSpeedOfLight = 299792458.0;           // m/s
constexpr double kReducedPlanckEvS = 6.582119569e-16;   // eV s

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

double lerp(double a, double b, double t) { return a + t * (b - a); }

}  // namespace

DispersionTable::DispersionTable(std::vector<DispersionEntry> rows, std::string source_label) {
  if (rows.size() < 2) {
    throw ValidationError(fmt::format("dispersion table '{}' needs at least 2 entries, got {}", source_label,
                                      rows.size()));
  }
  for (const auto& e : rows) {
    if (!std::isfinite(e.wavelength_nm) || !std::isfinite(e.n) || !std::isfinite(e.k)) {
      throw ValidationError(fmt::format("dispersion table '{}' has a non-finite entry", source_label));
    }
    if (e.wavelength_nm <= 0.0) {
      throw ValidationError(fmt::format("dispersion table '{}': wavelength {} nm is not positive", source_label,
                                        e.wavelength_nm));
    }
    if (e.k < 0.0) {
      throw ValidationError(fmt::format("dispersion table '{}': negative extinction k={} at {} nm", source_label, e.k,
                                        e.wavelength_nm));
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.wavelength_nm < b.wavelength_nm; });
  const auto dup = std::adjacent_find(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.wavelength_nm == b.wavelength_nm;
  });
  if (dup != rows.end()) {
    throw ValidationError(
        fmt::format("dispersion table '{}': duplicate wavelength {} nm", source_label, dup->wavelength_nm));
  }
  entries_ = std::make_shared<const std::vector<DispersionEntry>>(std::move(rows));
  label_ = std::make_shared<const std::string>(std::move(source_label));
}

DispersionTable load_dispersion(std::istream& source, DispersionFormat format, std::string source_label) {
  if (format != DispersionFormat::csv) throw ValidationError("unsupported dispersion format");

  std::vector<DispersionEntry> entries;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(source, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line = trim(line.substr(3));
    if (line.empty() || line.front() == '#') continue;

    const auto cells = split_commas(line);
    double first = 0.0;
    if (!seen_content && !parse_double(cells.front(), first)) {
      // header row: first token is not a number
      seen_content = true;
      continue;
    }
    seen_content = true;

    if (cells.size() != 3) {
      throw ParseError(line_no, fmt::format("expected 3 columns (wavelength_nm,n,k), got {}", cells.size()));
    }
    DispersionEntry e{};
    if (!parse_double(cells[0], e.wavelength_nm) || !parse_double(cells[1], e.n) ||
        !parse_double(cells[2], e.k)) {
      throw ParseError(line_no, fmt::format("non-numeric cell in '{}'", line));
    }
    entries.push_back(e);
  }
  return DispersionTable(std::move(entries), std::move(source_label));
}

DispersionTable load_dispersion_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open dispersion file '{}'", path.string()));
  return load_dispersion(in, DispersionFormat::csv, path.string());
}

const DispersionTable& bundled_gold_table() {
  static const DispersionTable table = [] {
    std::istringstream in{std::string(detail::kBundledGoldCsv)};
    return load_dispersion(in, DispersionFormat::csv, "gold, Johnson & Christy 1972 (bundled)");
  }();
  return table;
}

ComplexPermittivity permittivity_at(const DispersionTable& table, double wavelength_nm) {
  const auto& rows = table.entries();
  if (!(wavelength_nm >= table.min_wavelength() && wavelength_nm <= table.max_wavelength())) {
    throw OutOfRangeError(fmt::format("wavelength {} nm outside table '{}' range [{}, {}] nm", wavelength_nm,
                                      table.source_label(), table.min_wavelength(), table.max_wavelength()));
  }
  const auto hi = std::lower_bound(rows.begin(), rows.end(), wavelength_nm,
                                   [](const DispersionEntry& e, double wl) { return e.wavelength_nm < wl; });
  if (hi->wavelength_nm == wavelength_nm) return ComplexPermittivity::from_index(hi->n, hi->k);

  const auto lo = std::prev(hi);
  const double t = (wavelength_nm - lo->wavelength_nm) / (hi->wavelength_nm - lo->wavelength_nm);
  return ComplexPermittivity::from_index(lerp(lo->n, hi->n, t), lerp(lo->k, hi->k, t));
}

void DrudeLorentzParams::validate() const {
  if (!(plasma_frequency > 0.0) || !(damping_rate > 0.0)) {
    throw ValidationError("Drude plasma frequency and damping rate must be positive");
  }
  for (const auto& osc : oscillators) {
    if (!(osc.resonance > 0.0) || !(osc.width > 0.0)) {
      throw ValidationError("Lorentz oscillator resonance and width must be positive");
    }
  }
}

DrudeLorentzParams DrudeLorentzParams::gold_rakic() {
  // Rakic, Djurisic, Elazar, Majewski, Appl. Opt. 37, 5271 (1998), Table 1 (Au).
  // Published in eV with strengths f_j normalised to the plasma frequency.
  constexpr double wp = 9.03;
  constexpr double f0 = 0.760;
  constexpr double gamma0 = 0.053;
  struct Row {
    double f, gamma, w;
  };
  constexpr Row rows[] = {
      {0.024, 0.241, 0.415}, {0.010, 0.345, 0.830}, {0.071, 0.870, 2.969},
      {0.601, 2.494, 4.304}, {4.384, 2.214, 13.32},
  };
  const auto rad = [](double ev) { return ev / kReducedPlanckEvS; };

  DrudeLorentzParams p;
  p.plasma_frequency = rad(std::sqrt(f0) * wp);
  p.damping_rate = rad(gamma0);
  p.epsilon_infinity = 1.0;
  for (const auto& r : rows) {
    p.oscillators.push_back({r.f * wp * wp / (r.w * r.w), rad(r.w), rad(r.gamma)});
  }
  return p;
}

double angular_frequency(double wavelength_nm) {
  return 2.0 * std::numbers::pi * kSpeedOfLight / (wavelength_nm * 1e-9);
}

ComplexPermittivity drude_lorentz_permittivity(const DrudeLorentzParams& params, double wavelength_nm) {
  if (!(wavelength_nm > 0.0)) throw ValidationError("wavelength must be positive");
  using cd = std::complex<double>;
  constexpr cd i{0.0, 1.0};
  const double w = angular_frequency(wavelength_nm);
  const double wp = params.plasma_frequency;

  cd eps = params.epsilon_infinity - wp * wp / (w * w + i * params.damping_rate * w);
  for (const auto& osc : params.oscillators) {
    const double wj2 = osc.resonance * osc.resonance;
    eps += osc.strength * wj2 / (wj2 - w * w - i * osc.width * w);
  }
  return ComplexPermittivity::from(eps);
}

ComplexPermittivity evaluate(const MetalModel& model, double wavelength_nm) {
  return std::visit(
      [&](const auto& m) -> ComplexPermittivity {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DispersionTable>) {
          return permittivity_at(m, wavelength_nm);
        } else if constexpr (std::is_same_v<T, DrudeLorentzParams>) {
          return drude_lorentz_permittivity(m, wavelength_nm);
        } else {
          return m;
        }
      },
      model);
}

}  // namespace plasmon
