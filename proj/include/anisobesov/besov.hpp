#pragma once

#include "anisobesov/anisotropy.hpp"
#include "anisobesov/field.hpp"

namespace anisobesov {

// Parameters of the smoothness class: integrability p in (1, inf],
// fine-index theta in [1, inf], and the block truncation depth s_max.
// residual_tol bounds the admissible share of |f|_p left outside the
// outermost block box, relative to |f|_p itself.
struct BesovParams {
  AnisotropyProfile profile;
  double p = 2.0;
  double theta = 1.0;
  int s_max = 0;
  double residual_tol = 0.05;
};

// Layerwise norm (sum_{s<=s_max} b^{s theta} |f_s|_p^theta)^{1/theta},
// or sup_s b^s |f_s|_p for theta = inf. Errors when the grid cannot hold
// box s_max or when the spectral residual outside it is too large.
double block_norm(const SampledField& f, const BesovParams& params);

// Inverse transform of (i lambda_axis)^order times the coefficients.
// Guards against under-resolved inputs: the share of spectral energy in the
// top frequency octave along the axis must stay below 1e-6.
SampledField spectral_derivative(const SampledField& f, int axis, int order);

struct ModulusResult {
  double value = 0.0;
  // False when no positive grid shift fits below t; value is then 0.
  bool shift_representable = false;
};

// Order-k modulus of smoothness along one axis: the largest L_p norm of the
// k-th finite difference over shift sizes m*h_axis <= t, m >= 1. Samples
// shifted past the box edge count as zero.
ModulusResult modulus_of_smoothness(const SampledField& f, int order,
                                    int axis, double t, double p);

struct DefinitionNormOptions {
  // The t-integral runs over the dyadic grid t = 2^{-m}, m in
  // [-dyadic_levels, dyadic_levels]. Both discarded tails are benign for
  // admissible inputs: the integrand decays like a power of t on each side.
  int dyadic_levels = 12;
};

// Modulus-based norm |f|_p + sum_i (int t^{-theta alpha_i - 1}
// omega_{k_i}(D_i^{bar r_i} f, t)_p^theta dt)^{1/theta} with k_i =
// 1 + floor(alpha_i); theta = inf takes sup_t t^{-alpha_i} omega instead.
// Supported for d <= 2.
double definition_norm(const SampledField& f, const BesovParams& params,
                       const DefinitionNormOptions& opts = {});

}  // namespace anisobesov
