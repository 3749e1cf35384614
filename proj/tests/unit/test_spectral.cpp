#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "anisobesov/errors.hpp"
#include "anisobesov/serialization.hpp"
#include "anisobesov/spectral.hpp"
#include "doctest.h"

using namespace anisobesov;
namespace fs = std::filesystem;

namespace {

SampledField random_field(const GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledField f = zero_field(grid);
  for (auto& v : f.values) v = {u(rng), u(rng)};
  return f;
}

double rel_l2_diff(const SampledField& a, const SampledField& b) {
  const double base = std::max(lp_norm(a, 2.0), lp_norm(b, 2.0));
  return base == 0.0 ? 0.0 : lp_norm(subtract(a, b), 2.0) / base;
}

}  // namespace

TEST_CASE("innermost box mask keeps exactly the sub-unit frequencies") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({std::numbers::pi * 16.0 / 2.0}, {32});
  // freq_step = 1/8, nyquist = 2
  std::vector<std::uint8_t> inner;
  std::vector<std::uint8_t> shell;
  shell_masks(prof, 0, grid, inner, shell);
  CHECK(inner == shell);
  for (int pos = 0; pos < 32; ++pos) {
    const bool expected = std::abs(grid.frequency(0, pos)) < 1.0;
    CHECK(inner[pos] == (expected ? 1 : 0));
  }
}

TEST_CASE("shell masks telescope into the outer box mask") {
  const AnisotropyProfile prof = make_profile({1.0, 2.0});
  const GridSpec grid = make_grid({10.0, 10.0}, {64, 64});
  const int top = feasible_layer_count(prof, grid);
  REQUIRE(top >= 2);
  std::vector<std::uint8_t> sum(grid.total(), 0);
  std::vector<std::uint8_t> inner;
  std::vector<std::uint8_t> shell;
  for (int s = 0; s <= top; ++s) {
    shell_masks(prof, s, grid, inner, shell);
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] = static_cast<std::uint8_t>(sum[i] + shell[i]);
      CHECK(sum[i] <= 1);  // shells are disjoint
    }
  }
  CHECK(sum == inner);
}

TEST_CASE("isotropic shell one is the square annulus") {
  const AnisotropyProfile prof = make_profile({1.0, 1.0});
  const GridSpec grid = make_grid({8.0, 8.0}, {64, 64});
  std::vector<std::uint8_t> inner;
  std::vector<std::uint8_t> shell;
  shell_masks(prof, 1, grid, inner, shell);
  std::vector<int> idx;
  for (std::size_t i = 0; i < shell.size(); ++i) {
    grid.unflatten(i, idx);
    const double m = std::max(std::abs(grid.frequency(0, idx[0])),
                              std::abs(grid.frequency(1, idx[1])));
    const bool expected = m >= 1.0 && m < 2.0;
    CHECK(shell[i] == (expected ? 1 : 0));
  }
}

TEST_CASE("sections are the identity on fields inside the box") {
  const GridSpec grid = make_grid({10.0}, {256});
  const AnisotropyProfile prof = make_profile({1.0});
  const SampledField f = shell_indicator_field(prof, 2, grid);
  const FrequencyBox whole = make_box({grid.nyquist(0)});
  CHECK(rel_l2_diff(fourier_section(f, whole), f) < 1e-13);
}

TEST_CASE("section below its shell annihilates a shell-supported field") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({10.0}, {256});
  const SampledField f = shell_indicator_field(prof, 1, grid);
  const SampledField cut = fourier_section(f, layer_box(prof, 0));
  CHECK(lp_norm(cut, 2.0) <= 1e-10 * lp_norm(f, 2.0));
}

TEST_CASE("sections split disjoint shell sums cleanly") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({10.0}, {256});
  const SampledField low = shell_indicator_field(prof, 0, grid);
  const SampledField high = shell_indicator_field(prof, 2, grid);
  const SampledField cut = fourier_section(add(low, high), layer_box(prof, 1));
  CHECK(rel_l2_diff(cut, low) < 1e-10);
}

TEST_CASE("sections are idempotent and nested") {
  const GridSpec grid = make_grid({6.0, 6.0}, {32, 32});
  const SampledField f = random_field(grid, 21);
  const FrequencyBox small = make_box({2.0, 3.0});
  const FrequencyBox large = make_box({5.0, 7.0});
  const SampledField once = fourier_section(f, small);
  CHECK(rel_l2_diff(fourier_section(once, small), once) < 1e-12);
  const SampledField through =
      fourier_section(fourier_section(f, large), small);
  CHECK(rel_l2_diff(through, once) < 1e-12);
}

TEST_CASE("boxes past the grid limit are refused") {
  const GridSpec grid = make_grid({10.0}, {64});  // nyquist ~ 10.05
  CHECK_THROWS_AS(box_mask(make_box({11.0}), grid), guard_error);
  CHECK_THROWS_AS(make_box({-1.0}), validation_error);
  CHECK_THROWS_AS(make_box({}), validation_error);
  const SampledField f = zero_field(grid);
  CHECK_THROWS_AS(fourier_section(f, make_box({2.0, 2.0})),
                  validation_error);
}

TEST_CASE("layer decomposition reconstructs the field") {
  const AnisotropyProfile prof = make_profile({1.0, 2.0});
  const GridSpec grid = make_grid({8.0, 8.0}, {32, 32});
  const int top = feasible_layer_count(prof, grid);
  const SampledField f = random_field(grid, 4);
  const LayerStack stack = layer_decompose(f, prof, top);
  REQUIRE(static_cast<int>(stack.layers.size()) == top + 1);
  SampledField sum = stack.residual;
  for (const SampledField& layer : stack.layers) sum = add(sum, layer);
  CHECK(rel_l2_diff(sum, f) < 1e-12);

  // Parseval additivity across disjoint supports.
  double pieces = std::pow(lp_norm(stack.residual, 2.0), 2);
  for (const SampledField& layer : stack.layers) {
    pieces += std::pow(lp_norm(layer, 2.0), 2);
  }
  const double whole = std::pow(lp_norm(f, 2.0), 2);
  CHECK(pieces == doctest::Approx(whole).epsilon(1e-10));
}

TEST_CASE("fields inside the innermost box land in layer zero alone") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({10.0}, {128});
  const SampledField f = shell_indicator_field(prof, 0, grid);
  const LayerStack stack = layer_decompose(f, prof, 3);
  CHECK(rel_l2_diff(stack.layers[0], f) < 1e-13);
  for (int s = 1; s <= 3; ++s) {
    CHECK(lp_norm(stack.layers[s], 2.0) < 1e-13 * lp_norm(f, 2.0));
  }
  CHECK(lp_norm(stack.residual, 2.0) < 1e-13 * lp_norm(f, 2.0));
}

TEST_CASE("a shell-supported field occupies exactly its layer") {
  const AnisotropyProfile prof = make_profile({1.0, 1.0});
  const GridSpec grid = make_grid({8.0, 8.0}, {64, 64});
  const SampledField f = shell_indicator_field(prof, 2, grid);
  const LayerStack stack = layer_decompose(f, prof, 3);
  const double scale = lp_norm(f, 2.0);
  for (int s = 0; s <= 3; ++s) {
    const double norm = lp_norm(stack.layers[s], 2.0);
    if (s == 2) {
      CHECK(norm == doctest::Approx(scale).epsilon(1e-12));
    } else {
      CHECK(norm < 1e-13 * scale);
    }
  }
}

TEST_CASE("layer depth beyond the grid is refused with guidance") {
  const AnisotropyProfile prof = make_profile({1.0});
  const GridSpec grid = make_grid({10.0}, {64});  // nyquist ~ 10.05, cap 3
  const int cap = feasible_layer_count(prof, grid);
  CHECK(cap == 3);
  const SampledField f = random_field(grid, 8);
  CHECK_NOTHROW(layer_decompose(f, prof, cap));
  CHECK_THROWS_AS(layer_decompose(f, prof, cap + 1), guard_error);
  CHECK_THROWS_AS(layer_decompose(f, prof, -1), validation_error);
}

TEST_CASE("feasible layer count matches direct comparison") {
  const AnisotropyProfile prof = make_profile({1.0, 2.0});
  const GridSpec grid = make_grid({7.0, 9.0}, {64, 32});
  const int cap = feasible_layer_count(prof, grid);
  for (int ax = 0; ax < 2; ++ax) {
    CHECK(prof.layer_bound(ax, cap) <= grid.nyquist(ax));
  }
  bool next_fits = true;
  for (int ax = 0; ax < 2; ++ax) {
    next_fits =
        next_fits && prof.layer_bound(ax, cap + 1) <= grid.nyquist(ax);
  }
  CHECK_FALSE(next_fits);
}

TEST_CASE("layer stacks are exported with a manifest") {
  const AnisotropyProfile prof = make_profile({1.5});
  const GridSpec grid = make_grid({10.0}, {64});
  const SampledField f = random_field(grid, 17);
  const LayerStack stack = layer_decompose(f, prof, 2);
  const fs::path dir = fs::temp_directory_path() / "anisobesov_stack_test";
  fs::remove_all(dir);
  save_layer_stack(stack, dir.string());

  std::ifstream manifest(dir / "manifest.json");
  REQUIRE(manifest.good());
  const nlohmann::json j = nlohmann::json::parse(manifest);
  CHECK(j.at("S_max") == 2);
  CHECK(j.at("profile").at("r") == nlohmann::json::array({1.5}));

  for (int s = 0; s <= 2; ++s) {
    const SampledField layer =
        load_field((dir / ("layer_" + std::to_string(s) + ".csv")).string());
    CHECK(rel_l2_diff(layer, stack.layers[s]) == 0.0);
  }
  const SampledField residual = load_field((dir / "residual.csv").string());
  CHECK(rel_l2_diff(residual, stack.residual) == 0.0);
}
