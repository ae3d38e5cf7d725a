#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plasmon/error.hpp"
#include "plasmon/materials.hpp"

using namespace plasmon;

namespace {

DispersionTable parse(const std::string& text) {
  std::istringstream in(text);
  return load_dispersion(in);
}

std::complex<double> sq(double n, double k) { return std::complex<double>(n, k) * std::complex<double>(n, k); }

}  // namespace

TEST_CASE("two-row table round-trips") {
  const auto t = parse("500,0.97,1.87\n600,0.25,3.07");
  REQUIRE(t.entries().size() == 2);
  CHECK(t.min_wavelength() == 500.0);
  CHECK(t.max_wavelength() == 600.0);
  CHECK(t.entries()[1].k == 3.07);
}

TEST_CASE("header, comments, blank lines and unsorted rows") {
  const auto t = parse("# gold\nwavelength_nm,n,k\n\n600,0.25,3.07\n# mid\n500,0.97,1.87\n");
  REQUIRE(t.entries().size() == 2);
  CHECK(t.entries()[0].wavelength_nm == 500.0);
  CHECK(t.entries()[1].wavelength_nm == 600.0);
}

TEST_CASE("malformed rows name their line") {
  try {
    parse("wavelength_nm,n,k\n500,0.97,1.87\n600,abc,3.07\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("500,0.97\n600,0.25,3.07\n"), ParseError);
  CHECK_THROWS_AS(parse("500,0.97,1.87,4\n600,0.25,3.07\n"), ParseError);
}

TEST_CASE("table invariants") {
  CHECK_THROWS_AS(parse("500,0.97,1.87\n500,0.25,3.07\n"), ValidationError);
  CHECK_THROWS_AS(parse("500,0.97,1.87\n"), ValidationError);
  CHECK_THROWS_AS(parse("500,0.97,-1.87\n600,0.25,3.07\n"), ValidationError);
  CHECK_THROWS_AS(parse("-500,0.97,1.87\n600,0.25,3.07\n"), ValidationError);
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS_AS(load_dispersion_file("/nonexistent/gold.csv"), Error);
}

TEST_CASE("file loading uses the path as label") {
  const auto path = std::filesystem::temp_directory_path() / "plasmon_materials_test.csv";
  {
    std::ofstream f(path);
    f << "500,0.97,1.87\n600,0.25,3.07\n";
  }
  const auto t = load_dispersion_file(path);
  CHECK(t.source_label().find("plasmon_materials_test.csv") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("interpolation") {
  const auto t = parse("500,0.97,1.87\n600,0.25,3.07\n700,0.13,4.10");

  SUBCASE("grid points are exact") {
    for (const auto& e : t.entries()) {
      const auto eps = permittivity_at(t, e.wavelength_nm).value();
      CHECK(eps == sq(e.n, e.k));
    }
  }
  SUBCASE("midpoint averages n and k before squaring") {
    const auto eps = permittivity_at(t, 550.0).value();
    const auto want = sq((0.97 + 0.25) / 2, (1.87 + 3.07) / 2);
    CHECK(std::abs(eps - want) < 1e-14);
  }
  SUBCASE("no extrapolation") {
    CHECK_THROWS_AS(permittivity_at(t, 499.999), OutOfRangeError);
    CHECK_THROWS_AS(permittivity_at(t, 700.001), OutOfRangeError);
  }
  SUBCASE("continuous across interior grid points") {
    for (double wl : {600.0}) {
      const auto lo = permittivity_at(t, wl - 1e-6).value();
      const auto hi = permittivity_at(t, wl + 1e-6).value();
      CHECK(std::abs(hi - lo) < 1e-6);
    }
  }
}

TEST_CASE("bundled gold table") {
  const auto& gold = bundled_gold_table();
  CHECK(gold.min_wavelength() <= 400.0);
  CHECK(gold.max_wavelength() >= 1000.0);

  SUBCASE("810 nm fixture") {
    // Hand interpolation between the 756.0 nm and 821.1 nm rows.
    const auto eps = permittivity_at(gold, 810.0);
    CHECK(eps.re == doctest::Approx(-24.883122674849748).epsilon(1e-12));
    CHECK(eps.im == doctest::Approx(1.5630035090997898).epsilon(1e-12));
  }
  SUBCASE("continuity and passivity over the whole table") {
    const auto& rows = gold.entries();
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
      const double wl = rows[i].wavelength_nm;
      const auto lo = permittivity_at(gold, wl - 1e-6).value();
      const auto hi = permittivity_at(gold, wl + 1e-6).value();
      CHECK(std::abs(hi - lo) < 1e-4);
    }
    for (double wl = gold.min_wavelength(); wl <= gold.max_wavelength(); wl += 0.37) {
      CHECK(permittivity_at(gold, wl).im >= 0.0);
    }
  }
}

TEST_CASE("Drude-Lorentz model") {
  const double wp = 1.0e16;

  SUBCASE("lossless Drude at the plasma frequency") {
    const DrudeLorentzParams p{wp, 1e-9, {}, 3.0};
    const double wl = 2 * M_PI * 299792458.0 / wp * 1e9;
    CHECK(drude_lorentz_permittivity(p, wl).re == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("high-frequency asymptote") {
    const DrudeLorentzParams p{wp, 1e13, {}, 1.7};
    const auto eps = drude_lorentz_permittivity(p, 1e-6);
    CHECK(eps.re == doctest::Approx(1.7).epsilon(1e-6));
    CHECK(std::abs(eps.im) < 1e-6);
  }
  SUBCASE("gold fit at 810 nm is a lossy metal") {
    const auto eps = drude_lorentz_permittivity(DrudeLorentzParams::gold_rakic(), 810.0);
    CHECK(eps.re < 0.0);
    CHECK(eps.im > 0.0);
    CHECK(eps.re == doctest::Approx(-21.0).epsilon(0.05));
  }
  SUBCASE("passive over the visible and near infrared") {
    const auto p = DrudeLorentzParams::gold_rakic();
    for (double wl = 300.0; wl <= 2000.0; wl += 10.0) CHECK(drude_lorentz_permittivity(p, wl).im > 0.0);
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(DrudeLorentzParams({wp, -1.0, {}, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(DrudeLorentzParams({wp, 1e13, {{1.0, 1e15, 0.0}}, 1.0}).validate(), ValidationError);
  }
}

TEST_CASE("metal model variant") {
  CHECK(evaluate(ComplexPermittivity{-20.0, 1.0}, 810.0).re == -20.0);
  CHECK(evaluate(bundled_gold_table(), 810.0).re == permittivity_at(bundled_gold_table(), 810.0).re);
}
