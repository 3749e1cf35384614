#include "anisobesov/spectral.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "anisobesov/errors.hpp"
#include "anisobesov/serialization.hpp"

namespace anisobesov {

namespace {

// Per-axis membership tables |lambda_j| < bounds[j], combined over the flat
// index row by row (last axis contiguous).
std::vector<std::uint8_t> build_mask(const std::vector<double>& bounds,
                                     const GridSpec& grid) {
  const int d = grid.dim();
  std::vector<std::vector<std::uint8_t>> axis(d);
  for (int ax = 0; ax < d; ++ax) {
    axis[ax].resize(grid.samples[ax]);
    for (int pos = 0; pos < grid.samples[ax]; ++pos) {
      axis[ax][pos] = std::abs(grid.frequency(ax, pos)) < bounds[ax] ? 1 : 0;
    }
  }
  std::vector<std::uint8_t> mask(grid.total(), 0);
  const int n_last = grid.samples[d - 1];
  const std::size_t rows = mask.size() / static_cast<std::size_t>(n_last);
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    bool outer = true;
    for (int ax = d - 2; ax >= 0; --ax) {
      outer = outer && axis[ax][rest % grid.samples[ax]] != 0;
      rest /= grid.samples[ax];
    }
    if (!outer) continue;
    std::uint8_t* out = mask.data() + row * n_last;
    for (int i = 0; i < n_last; ++i) out[i] = axis[d - 1][i];
  }
  return mask;
}

void require_representable(const std::vector<double>& bounds,
                           const GridSpec& grid) {
  for (int ax = 0; ax < grid.dim(); ++ax) {
    if (bounds[ax] > grid.nyquist(ax)) {
      throw guard_error("frequency bound " + format_double(bounds[ax]) +
                        " on axis " + std::to_string(ax) +
                        " exceeds the grid limit " +
                        format_double(grid.nyquist(ax)) +
                        "; use a finer grid");
    }
  }
}

}  // namespace

FrequencyBox make_box(std::vector<double> bounds) {
  if (bounds.empty()) {
    throw validation_error("frequency box needs at least one bound");
  }
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    if (!(bounds[j] > 0.0) || !std::isfinite(bounds[j])) {
      throw validation_error("frequency bound " + std::to_string(j) +
                             " must be positive and finite");
    }
  }
  return FrequencyBox{std::move(bounds)};
}

FrequencyBox layer_box(const AnisotropyProfile& profile, int s) {
  if (s < 0) {
    throw validation_error("layer index must be non-negative");
  }
  std::vector<double> bounds(profile.dim());
  for (int ax = 0; ax < profile.dim(); ++ax) {
    bounds[ax] = profile.layer_bound(ax, s);
  }
  return FrequencyBox{std::move(bounds)};
}

std::vector<std::uint8_t> box_mask(const FrequencyBox& box,
                                   const GridSpec& grid) {
  if (static_cast<int>(box.bounds.size()) != grid.dim()) {
    throw validation_error("box dimension does not match the grid");
  }
  require_representable(box.bounds, grid);
  return build_mask(box.bounds, grid);
}

void shell_masks(const AnisotropyProfile& profile, int s, const GridSpec& grid,
                 std::vector<std::uint8_t>& inner,
                 std::vector<std::uint8_t>& shell) {
  if (profile.dim() != grid.dim()) {
    throw validation_error("profile dimension does not match the grid");
  }
  inner = box_mask(layer_box(profile, s), grid);
  if (s == 0) {
    shell = inner;
    return;
  }
  const std::vector<std::uint8_t> prev =
      build_mask(layer_box(profile, s - 1).bounds, grid);
  shell.resize(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    shell[i] = static_cast<std::uint8_t>(inner[i] & ~prev[i] & 1);
  }
}

SpectralField apply_mask(const SpectralField& c,
                         const std::vector<std::uint8_t>& mask) {
  if (mask.size() != c.coeffs.size()) {
    throw validation_error("mask size does not match the coefficient grid");
  }
  SpectralField out = c;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == 0) out.coeffs[i] = 0.0;
  }
  return out;
}

SampledField fourier_section(const SampledField& f, const FrequencyBox& box) {
  const auto mask = box_mask(box, f.grid);
  return inverse_transform(apply_mask(forward_transform(f), mask));
}

LayerStack layer_decompose(const SampledField& f,
                           const AnisotropyProfile& profile, int s_max) {
  if (s_max < 0) {
    throw validation_error("layer count must be non-negative");
  }
  if (profile.dim() != f.grid.dim()) {
    throw validation_error("profile dimension does not match the field");
  }
  require_representable(layer_box(profile, s_max).bounds, f.grid);

  const SpectralField coeffs = forward_transform(f);
  LayerStack stack{profile, {}, {}};
  stack.layers.reserve(static_cast<std::size_t>(s_max) + 1);

  std::vector<std::uint8_t> prev;  // box s-1 membership
  for (int s = 0; s <= s_max; ++s) {
    std::vector<std::uint8_t> inner =
        build_mask(layer_box(profile, s).bounds, f.grid);
    std::vector<std::uint8_t> shell = inner;
    if (s > 0) {
      for (std::size_t i = 0; i < shell.size(); ++i) {
        shell[i] = static_cast<std::uint8_t>(inner[i] & ~prev[i] & 1);
      }
    }
    stack.layers.push_back(inverse_transform(apply_mask(coeffs, shell)));
    prev = std::move(inner);
  }
  std::vector<std::uint8_t> outside(prev.size());
  for (std::size_t i = 0; i < prev.size(); ++i) {
    outside[i] = static_cast<std::uint8_t>(1 - prev[i]);
  }
  stack.residual = inverse_transform(apply_mask(coeffs, outside));
  return stack;
}

int feasible_layer_count(const AnisotropyProfile& profile,
                         const GridSpec& grid) {
  if (profile.dim() != grid.dim()) {
    throw validation_error("profile dimension does not match the grid");
  }
  constexpr int kCap = 64;
  int s = -1;
  while (s < kCap) {
    bool fits = true;
    for (int ax = 0; ax < grid.dim(); ++ax) {
      if (profile.layer_bound(ax, s + 1) > grid.nyquist(ax)) {
        fits = false;
        break;
      }
    }
    if (!fits) break;
    ++s;
  }
  return s;
}

SampledField shell_indicator_field(const AnisotropyProfile& profile, int k,
                                   const GridSpec& grid) {
  std::vector<std::uint8_t> inner;
  std::vector<std::uint8_t> shell;
  shell_masks(profile, k, grid, inner, shell);
  SpectralField c{grid, std::vector<std::complex<double>>(grid.total())};
  for (std::size_t i = 0; i < shell.size(); ++i) {
    if (shell[i] != 0) c.coeffs[i] = 1.0;
  }
  return inverse_transform(c);
}

void save_layer_stack(const LayerStack& stack, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw validation_error("cannot create directory '" + dir +
                           "': " + ec.message());
  }
  for (std::size_t s = 0; s < stack.layers.size(); ++s) {
    save_field(stack.layers[s],
               (fs::path(dir) / ("layer_" + std::to_string(s) + ".csv"))
                   .string());
  }
  save_field(stack.residual, (fs::path(dir) / "residual.csv").string());
  const nlohmann::json manifest{
      {"profile", profile_to_json(stack.profile)},
      {"S_max", static_cast<int>(stack.layers.size()) - 1}};
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!out) {
    throw validation_error("cannot write manifest in '" + dir + "'");
  }
  out << manifest.dump(2) << '\n';
}

}  // namespace anisobesov
