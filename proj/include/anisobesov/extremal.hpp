#pragma once

#include <vector>

#include "anisobesov/anisotropy.hpp"
#include "anisobesov/field.hpp"

namespace anisobesov {

// Separable entire function amplitude * prod_j sin(degrees[j] x_j) / x_j of
// exponential type degrees[j] per axis.
struct SincProductSpec {
  std::vector<double> degrees;
  double amplitude = 1.0;
};

// Spec with the standard amplitude (2/pi)^{d/2}, which makes the transform
// of the product equal to the indicator of the box |lambda_j| < degrees[j].
SincProductSpec make_sinc_spec(std::vector<double> degrees);

// sin(nu x)/x with a series fallback near x = 0.
double scaled_sinc(double nu, double x);

// c_p = integral over R of |sin t / t|^p dt, p > 1. Head by adaptive
// quadrature over half-periods, tail summed exactly via the Hurwitz zeta;
// absolute error well under 1e-10.
double sinc_lp_constant(double p);

// Crude remainder bound 2 T^{1-p}/(p-1) for truncating that integral (and
// box-truncated sinc-product norms) at |t| = T. Reported alongside
// quadrature norms of sinc families.
double sinc_tail_bound(double p, double T);

// Exact L_p(R^d) norm of the sinc product:
// amplitude * prod_j (degrees[j]^{p-1} c_p)^{1/p}.
double sinc_product_norm(const SincProductSpec& spec, double p);

// Entire function whose continuum transform is the indicator of shell k of
// the profile: for k >= 1 the difference of the box-k and box-(k-1) sinc
// products, for k = 0 the unit-box product. Sampled pointwise, so its grid
// coefficients carry truncation leakage of order the inverse box size.
SampledField shell_field(const AnisotropyProfile& profile, int k,
                         const GridSpec& grid);

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Triangle-inequality envelope for the L_p norm of shell_field(k), k >= 1,
// from the exact norms of its two sinc-product halves. Both bounds scale as
// 2^{dk/p'} with k-independent constants.
NormBounds shell_field_norm_bounds(const AnisotropyProfile& profile, int k,
                                   double p);

enum class WitnessConstruction {
  spectral,  // transform of the exact grid shell indicator (leakage-free)
  sinc,      // pointwise sinc-product samples
};

// Normalized extremal element sitting in shell n: scale * base field with
// scale chosen so the layerwise norm at theta = 1 equals 1. prefactor is
// the rate-carrying factor 2^{-n(g + d/p')} and c1 the measured constant
// with scale = c1 * prefactor.
struct LowerBoundWitness {
  SampledField field;
  double c1 = 0.0;
  double prefactor = 0.0;
};

LowerBoundWitness lower_bound_witness(
    const AnisotropyProfile& profile, int n, double p, const GridSpec& grid,
    WitnessConstruction construction = WitnessConstruction::spectral);

}  // namespace anisobesov
