#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anisobesov/anisotropy.hpp"
#include "anisobesov/field.hpp"

namespace anisobesov {

// Open frequency box: lambda is inside iff |lambda_j| < bounds[j] for all j.
struct FrequencyBox {
  std::vector<double> bounds;
};

FrequencyBox make_box(std::vector<double> bounds);

// Box with bounds (a_1^s, ..., a_d^s) for layer index s >= 0.
FrequencyBox layer_box(const AnisotropyProfile& profile, int s);

// Dyadic layering of a field: layers[s] carries the spectrum inside shell s
// (box s minus box s-1, shell 0 = box 0) and residual carries everything
// outside box s_max. The pieces sum back to the original field exactly.
struct LayerStack {
  AnisotropyProfile profile;
  std::vector<SampledField> layers;
  SampledField residual;
};

// 0/1 indicator of the box on the grid frequency lattice, flat storage
// order. Throws guard_error when some bound exceeds the grid Nyquist limit.
std::vector<std::uint8_t> box_mask(const FrequencyBox& box,
                                   const GridSpec& grid);

// Indicators of box s ("inner") and of shell s on the frequency lattice.
void shell_masks(const AnisotropyProfile& profile, int s, const GridSpec& grid,
                 std::vector<std::uint8_t>& inner,
                 std::vector<std::uint8_t>& shell);

// Coefficientwise multiply by a 0/1 mask.
SpectralField apply_mask(const SpectralField& c,
                         const std::vector<std::uint8_t>& mask);

// Band limitation: inverse transform of the coefficients restricted to the
// box. Idempotent; linear; exact on grid fields.
SampledField fourier_section(const SampledField& f, const FrequencyBox& box);

LayerStack layer_decompose(const SampledField& f,
                           const AnisotropyProfile& profile, int s_max);

// Largest s whose layer box still fits under the grid Nyquist limits on
// every axis; -1 when not even s = 0 fits.
int feasible_layer_count(const AnisotropyProfile& profile,
                         const GridSpec& grid);

// Grid field whose transform is exactly the indicator of shell k: the
// band-limited analogue of the shifted-sinc-product difference, free of
// truncation leakage by construction.
SampledField shell_indicator_field(const AnisotropyProfile& profile, int k,
                                   const GridSpec& grid);

// Writes layer_<s>.csv for each layer, residual.csv, and manifest.json
// {"profile":{...},"S_max":int} into dir (created if absent).
void save_layer_stack(const LayerStack& stack, const std::string& dir);

}  // namespace anisobesov
