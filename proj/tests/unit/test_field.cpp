#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "anisobesov/errors.hpp"
#include "anisobesov/field.hpp"
#include "doctest.h"

using namespace anisobesov;

namespace {

SampledField random_field(const GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledField f = zero_field(grid);
  for (auto& v : f.values) v = {u(rng), u(rng)};
  return f;
}

double max_abs_diff(const SampledField& a, const SampledField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("grid geometry follows the centred conventions") {
  const GridSpec grid = make_grid({5.0}, {16});
  CHECK(grid.total() == 16);
  CHECK(grid.step(0) == doctest::Approx(10.0 / 16.0));
  CHECK(grid.point(0, 0) == doctest::Approx(-5.0));
  CHECK(grid.point(0, 8) == doctest::Approx(0.0));
  CHECK(grid.freq_step(0) == doctest::Approx(std::numbers::pi / 5.0));
  CHECK(grid.nyquist(0) ==
        doctest::Approx(std::numbers::pi * 16.0 / 10.0));
  CHECK(grid.frequency(0, 8) == doctest::Approx(0.0));
  CHECK(grid.frequency(0, 0) == doctest::Approx(-grid.nyquist(0)));
  CHECK(grid.frequency(0, 15) ==
        doctest::Approx(grid.nyquist(0) - grid.freq_step(0)));
}

TEST_CASE("flatten and unflatten are mutually inverse") {
  const GridSpec grid = make_grid({1.0, 2.0, 3.0}, {4, 6, 8});
  std::vector<int> idx;
  for (std::size_t flat = 0; flat < grid.total(); ++flat) {
    grid.unflatten(flat, idx);
    CHECK(grid.flatten(idx) == flat);
  }
  // axis 0 is outermost
  CHECK(grid.flatten({1, 0, 0}) == 48);
  CHECK(grid.flatten({0, 1, 0}) == 8);
  CHECK(grid.flatten({0, 0, 1}) == 1);
}

TEST_CASE("grid validation rejects malformed input") {
  CHECK_THROWS_AS(make_grid({}, {}), validation_error);
  CHECK_THROWS_AS(make_grid({1.0}, {3}), validation_error);
  CHECK_THROWS_AS(make_grid({1.0}, {0}), validation_error);
  CHECK_THROWS_AS(make_grid({-1.0}, {8}), validation_error);
  CHECK_THROWS_AS(make_grid({1.0, 2.0}, {8}), validation_error);
}

TEST_CASE("transform round trip is lossless") {
  for (const GridSpec& grid :
       {make_grid({3.0}, {64}), make_grid({2.0, 5.0}, {8, 16}),
        make_grid({1.0, 2.0, 1.5}, {4, 6, 8})}) {
    const SampledField f = random_field(grid, 7 + grid.total());
    const SampledField back = inverse_transform(forward_transform(f));
    CHECK(max_abs_diff(f, back) < 1e-13);
  }
}

TEST_CASE("transform preserves energy exactly") {
  const GridSpec grid = make_grid({4.0, 2.0}, {32, 16});
  const SampledField f = random_field(grid, 99);
  const SpectralField c = forward_transform(f);
  CHECK(l2_norm(c) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-13));
}

TEST_CASE("the standard Gaussian is a fixed point of the transform") {
  // With the unitary convention, exp(-x^2/2) transforms to exp(-lambda^2/2).
  const GridSpec grid = make_grid({20.0}, {512});
  const SampledField f = sample(grid, [](const std::vector<double>& x) {
    return std::complex<double>(std::exp(-0.5 * x[0] * x[0]), 0.0);
  });
  const SpectralField c = forward_transform(f);
  double worst = 0.0;
  for (int pos = 0; pos < grid.samples[0]; ++pos) {
    const double lambda = grid.frequency(0, pos);
    worst = std::max(worst, std::abs(c.coeffs[pos] -
                                     std::exp(-0.5 * lambda * lambda)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("product Gaussian self-transforms in two dimensions") {
  const GridSpec grid = make_grid({15.0, 15.0}, {128, 128});
  const SampledField f = sample(grid, [](const std::vector<double>& x) {
    return std::complex<double>(
        std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0);
  });
  const SpectralField c = forward_transform(f);
  double worst = 0.0;
  std::vector<int> idx;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    c.grid.unflatten(i, idx);
    const double l0 = grid.frequency(0, idx[0]);
    const double l1 = grid.frequency(1, idx[1]);
    worst = std::max(
        worst, std::abs(c.coeffs[i] - std::exp(-0.5 * (l0 * l0 + l1 * l1))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("constant field concentrates at zero frequency") {
  const GridSpec grid = make_grid({6.0}, {64});
  const SampledField f = sample(grid, [](const std::vector<double>&) {
    return std::complex<double>(1.0, 0.0);
  });
  const SpectralField c = forward_transform(f);
  const int zero_pos = grid.samples[0] / 2;
  // Riemann sum of the full box: 2L / sqrt(2 pi).
  CHECK(c.coeffs[zero_pos].real() ==
        doctest::Approx(12.0 / std::sqrt(2.0 * std::numbers::pi))
            .epsilon(1e-13));
  for (int pos = 0; pos < grid.samples[0]; ++pos) {
    if (pos == zero_pos) continue;
    CHECK(std::abs(c.coeffs[pos]) < 1e-12);
  }
}

TEST_CASE("forward transform is linear") {
  const GridSpec grid = make_grid({2.0, 3.0}, {16, 8});
  const SampledField f = random_field(grid, 5);
  const SampledField g = random_field(grid, 6);
  const std::complex<double> alpha{1.25, -0.5};
  const SpectralField lhs = forward_transform(add(scale(f, alpha), g));
  const SpectralField rhs =
      add(scale(forward_transform(f), alpha), forward_transform(g));
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.coeffs[i] - rhs.coeffs[i]));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("norms follow closed forms on constant fields") {
  const GridSpec grid = make_grid({3.0, 2.0}, {16, 32});
  const SampledField f = sample(grid, [](const std::vector<double>&) {
    return std::complex<double>(-2.0, 0.0);
  });
  const double volume = 6.0 * 4.0;
  CHECK(lp_norm(f, 1.0) == doctest::Approx(2.0 * volume).epsilon(1e-13));
  CHECK(lp_norm(f, 2.0) ==
        doctest::Approx(2.0 * std::sqrt(volume)).epsilon(1e-13));
  CHECK(lp_norm(f, 3.0) ==
        doctest::Approx(2.0 * std::pow(volume, 1.0 / 3.0)).epsilon(1e-13));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(lp_norm(f, inf) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(lp_norm(f, 0.5), validation_error);
}

TEST_CASE("sampling passes exact grid coordinates") {
  const GridSpec grid = make_grid({2.0, 8.0}, {4, 8});
  const SampledField f = sample(grid, [](const std::vector<double>& x) {
    return std::complex<double>(x[0], x[1]);
  });
  std::vector<int> idx;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    grid.unflatten(i, idx);
    CHECK(f.values[i].real() == doctest::Approx(grid.point(0, idx[0])));
    CHECK(f.values[i].imag() == doctest::Approx(grid.point(1, idx[1])));
  }
}

TEST_CASE("field arithmetic needs matching grids") {
  const SampledField a = zero_field(make_grid({1.0}, {8}));
  const SampledField b = zero_field(make_grid({1.0}, {16}));
  CHECK_THROWS_AS(add(a, b), validation_error);
  CHECK_THROWS_AS(subtract(a, b), validation_error);
}
