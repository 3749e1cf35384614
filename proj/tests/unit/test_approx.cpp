#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "anisobesov/approx.hpp"
#include "anisobesov/errors.hpp"
#include "anisobesov/extremal.hpp"
#include "anisobesov/serialization.hpp"
#include "anisobesov/spectral.hpp"
#include "doctest.h"

using namespace anisobesov;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("band-limited fields are reproduced by deep enough sections") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({20.0}, {256});
  const SampledField f =
      random_band_limited(grid, layer_box(prof, 2).bounds, 3);
  CHECK(truncation_error(f, prof, 3, 2.0) <= 1e-13 * lp_norm(f, 2.0));
}

TEST_CASE("a field above the cut keeps its whole norm as error") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({20.0}, {256});
  const SampledField f = shell_indicator_field(prof, 3, grid);
  for (double q : {1.5, 2.0, 3.0}) {
    CHECK(truncation_error(f, prof, 3, q) ==
          doctest::Approx(lp_norm(f, q)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(truncation_error(f, prof, 0, 2.0), validation_error);
  CHECK_THROWS_AS(truncation_error(f, prof, 3, 1.0), validation_error);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(truncation_error(f, prof, 3, inf), validation_error);
}

TEST_CASE("quadratic truncation errors shrink with depth") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({20.0}, {512});
  const SampledField f = sample(grid, [](const std::vector<double>& x) {
    return std::complex<double>(std::exp(-0.5 * x[0] * x[0]), 0.0);
  });
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 4; ++n) {
    const double error = truncation_error(f, prof, n, 2.0);
    CHECK(error <= previous);
    previous = error;
  }
}

TEST_CASE("sections split energy pythagorean-style") {
  const GridSpec grid = make_grid({10.0}, {128});
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledField f = zero_field(grid);
  for (auto& v : f.values) v = {u(rng), u(rng)};
  const SampledField inside = fourier_section(f, make_box({4.0}));
  const SampledField outside = subtract(f, inside);
  const double whole = std::pow(lp_norm(f, 2.0), 2);
  const double split =
      std::pow(lp_norm(inside, 2.0), 2) + std::pow(lp_norm(outside, 2.0), 2);
  CHECK(std::abs(whole - split) <= 1e-9 * whole);
}

TEST_CASE("the predicted exponent follows the closed form") {
  const TheoreticalRate same = theoretical_rate(make_profile({1.0}), 2.0, 2.0);
  CHECK(same.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(same.feasible);

  const TheoreticalRate mixed =
      theoretical_rate(make_profile({1.0, 2.0}), 2.0, 4.0);
  CHECK(mixed.value == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(mixed.feasible);

  const TheoreticalRate wide =
      theoretical_rate(make_profile({1.0}), 1.25, 5.0);
  CHECK(wide.value == doctest::Approx(0.4).epsilon(1e-14));

  const TheoreticalRate flat =
      theoretical_rate(make_profile({0.3}), 1.25, 5.0);
  CHECK(flat.value < 0.0);
  CHECK_FALSE(flat.feasible);

  CHECK_THROWS_AS(theoretical_rate(make_profile({1.0}), 3.0, 2.0),
                  validation_error);
  CHECK_THROWS_AS(theoretical_rate(make_profile({1.0}), 1.0, 2.0),
                  validation_error);
}

TEST_CASE("the rate scan recovers the witness decay") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({50.0}, {2048});
  const auto family = [&](int n) {
    return lower_bound_witness(prof, n, 2.0, grid).field;
  };
  const RateReport report = rate_scan(family, prof, 2.0, 2.0, {2, 3, 4});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.fitted_slope == doctest::Approx(-1.0).epsilon(0.15));
  CHECK(report.theoretical_exponent == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.p == 2.0);
  CHECK(report.q == 2.0);
  for (const RateRow& row : report.rows) {
    CHECK(row.error > 0.0);
    CHECK(std::isfinite(row.error));
  }

  CHECK_THROWS_AS(rate_scan(family, prof, 2.0, 2.0, {2, 3}),
                  validation_error);
  RateScanOptions drowned;
  drowned.noise_floor = 1e10;
  CHECK_THROWS_AS(rate_scan(family, prof, 2.0, 2.0, {2, 3, 4}, drowned),
                  guard_error);
}

TEST_CASE("rate reports serialize with a fixed schema") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({50.0}, {2048});
  const auto family = [&](int n) {
    return lower_bound_witness(prof, n, 2.0, grid).field;
  };
  const RateReport report = rate_scan(family, prof, 2.0, 2.0, {2, 3, 4});
  const fs::path dir = fs::temp_directory_path() / "anisobesov_rate_test";
  fs::create_directories(dir);
  const std::string stem = (dir / "scan").string();
  save_rate_report(report, stem);

  const std::string csv = slurp(dir / "scan.csv");
  CHECK(csv.rfind("n,error,log2_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  const nlohmann::json j = nlohmann::json::parse(slurp(dir / "scan.json"));
  for (const char* key : {"fitted_slope", "theoretical_exponent", "p", "q",
                          "r", "grid"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("fitted_slope").get<double>() ==
        doctest::Approx(report.fitted_slope).epsilon(1e-12));

  save_rate_report(report, stem + "_again");
  CHECK(slurp(dir / "scan_again.csv") == csv);
}

TEST_CASE("the different-metrics inequality holds with exact constants") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({400.0}, {4096});
  const SampledField f = shell_indicator_field(prof, 0, grid);
  const double inf = std::numeric_limits<double>::infinity();
  const NikolskiiCheck check = nikolskii_check(f, {1.0}, 2.0, inf);
  CHECK(check.pass);
  CHECK(check.lhs ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(2e-2));
  CHECK(check.rhs ==
        doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(2e-2));
  CHECK(check.ratio == doctest::Approx(check.lhs / check.rhs).epsilon(1e-12));
}

TEST_CASE("equal exponents make the inequality trivial but still checked") {
  const GridSpec grid = make_grid({10.0}, {64});
  const SampledField f = random_band_limited(grid, {3.0}, 5);
  const NikolskiiCheck check = nikolskii_check(f, {3.0}, 2.0, 2.0);
  CHECK(check.pass);
  CHECK(check.rhs == doctest::Approx(2.0 * check.lhs).epsilon(1e-12));
}

TEST_CASE("random band-limited trials never violate the inequality") {
  const GridSpec grid = make_grid({15.0, 15.0}, {32, 32});
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.25, 0.75);
  const double inf = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> nu = {u(rng) * grid.nyquist(0),
                                    u(rng) * grid.nyquist(1)};
    const SampledField g = random_band_limited(grid, nu, 1000 + trial);
    CHECK(nikolskii_check(g, nu, 1.5, 2.0).pass);
    CHECK(nikolskii_check(g, nu, 2.0, inf).pass);
  }
}

TEST_CASE("fields with spectrum outside the stated box are refused") {
  const GridSpec grid = make_grid({10.0}, {64});
  const SampledField f = random_band_limited(grid, {8.0}, 2);
  CHECK_THROWS_AS(nikolskii_check(f, {2.0}, 2.0, 4.0), guard_error);
  CHECK_THROWS_AS(nikolskii_check(f, {8.0}, 2.0, 1.5), validation_error);
  CHECK_THROWS_AS(nikolskii_check(f, {8.0}, 1.0, 2.0), validation_error);
}

TEST_CASE("band-limited noise is seed-deterministic with exact support") {
  const GridSpec grid = make_grid({10.0}, {64});
  const SampledField a = random_band_limited(grid, {4.0}, 7);
  const SampledField b = random_band_limited(grid, {4.0}, 7);
  CHECK(a.values == b.values);
  const SampledField c = random_band_limited(grid, {4.0}, 8);
  CHECK(lp_norm(subtract(a, c), 2.0) > 1e-3);

  const SpectralField coeffs = forward_transform(a);
  const std::vector<std::uint8_t> mask = box_mask(make_box({4.0}), grid);
  double outside = 0.0;
  double inside = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const double mag = std::abs(coeffs.coeffs[i]);
    double& slot = mask[i] ? inside : outside;
    slot = std::max(slot, mag);
  }
  CHECK(inside > 0.1);
  CHECK(outside <= 1e-13 * inside);
}
