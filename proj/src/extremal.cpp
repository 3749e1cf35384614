#include "anisobesov/extremal.hpp"

#include <cmath>
#include <numbers>

#include "anisobesov/besov.hpp"
#include "anisobesov/errors.hpp"
#include "anisobesov/quadrature.hpp"
#include "anisobesov/spectral.hpp"

namespace anisobesov {

namespace {

constexpr double kPi = std::numbers::pi;

void require_degrees(const std::vector<double>& degrees) {
  if (degrees.empty()) {
    throw validation_error("sinc product needs at least one degree");
  }
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    if (!(degrees[j] > 0.0) || !std::isfinite(degrees[j])) {
      throw validation_error("sinc degree " + std::to_string(j) +
                             " must be positive and finite");
    }
  }
}

void require_shell_fits(const AnisotropyProfile& profile, int k,
                        const GridSpec& grid) {
  if (profile.dim() != grid.dim()) {
    throw validation_error("profile dimension does not match the grid");
  }
  if (k < 0) {
    throw validation_error("shell index must be non-negative");
  }
  for (int ax = 0; ax < grid.dim(); ++ax) {
    if (profile.layer_bound(ax, k) > grid.nyquist(ax)) {
      throw guard_error("shell " + std::to_string(k) +
                        " exceeds the grid limit on axis " +
                        std::to_string(ax) + "; use a finer grid");
    }
  }
}

double conjugate_exponent_reciprocal(double p) {
  // 1/p' = 1 - 1/p; p = inf gives 1.
  return std::isinf(p) ? 1.0 : 1.0 - 1.0 / p;
}

}  // namespace

SincProductSpec make_sinc_spec(std::vector<double> degrees) {
  require_degrees(degrees);
  const double amplitude =
      std::pow(2.0 / kPi, 0.5 * static_cast<double>(degrees.size()));
  return SincProductSpec{std::move(degrees), amplitude};
}

double scaled_sinc(double nu, double x) {
  const double z = nu * x;
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return nu * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  return std::sin(z) / x;
}

double sinc_lp_constant(double p) {
  if (!(p > 1.0)) {
    throw validation_error(
        "the sinc L_p constant diverges for p <= 1; need p > 1");
  }
  constexpr int kHalfPeriods = 64;
  auto integrand = [p](double t) {
    return std::pow(std::abs(scaled_sinc(1.0, t)), p);
  };
  double head = 0.0;
  for (int k = 0; k < kHalfPeriods; ++k) {
    head += integrate(integrand, k * kPi, (k + 1) * kPi, 1e-13);
  }
  // Remaining half-periods in closed form: with t = k pi + u,
  // sum_{k>=K} |sin u|^p / (k pi + u)^p = pi^{-p} |sin u|^p zeta(p, K + u/pi).
  auto tail_integrand = [p](double u) {
    return std::pow(std::abs(std::sin(u)), p) *
           hurwitz_zeta(p, kHalfPeriods + u / kPi);
  };
  const double tail =
      std::pow(kPi, -p) * integrate(tail_integrand, 0.0, kPi, 1e-13);
  return 2.0 * (head + tail);
}

double sinc_tail_bound(double p, double T) {
  if (!(p > 1.0) || !(T > 0.0)) {
    throw validation_error("tail bound needs p > 1 and T > 0");
  }
  return 2.0 * std::pow(T, 1.0 - p) / (p - 1.0);
}

double sinc_product_norm(const SincProductSpec& spec, double p) {
  require_degrees(spec.degrees);
  const double c_p = sinc_lp_constant(p);
  double norm = spec.amplitude;
  for (double nu : spec.degrees) {
    norm *= std::pow(std::pow(nu, p - 1.0) * c_p, 1.0 / p);
  }
  return norm;
}

SampledField shell_field(const AnisotropyProfile& profile, int k,
                         const GridSpec& grid) {
  require_shell_fits(profile, k, grid);
  const int d = grid.dim();
  const double amplitude = std::pow(2.0 / kPi, 0.5 * d);
  std::vector<double> outer(d);
  std::vector<double> inner(d);
  for (int ax = 0; ax < d; ++ax) {
    outer[ax] = profile.layer_bound(ax, k);
    if (k >= 1) inner[ax] = profile.layer_bound(ax, k - 1);
  }
  return sample(grid, [&](const std::vector<double>& x) {
    double hi = amplitude;
    for (int ax = 0; ax < d; ++ax) hi *= scaled_sinc(outer[ax], x[ax]);
    if (k == 0) return std::complex<double>(hi, 0.0);
    double lo = amplitude;
    for (int ax = 0; ax < d; ++ax) lo *= scaled_sinc(inner[ax], x[ax]);
    return std::complex<double>(hi - lo, 0.0);
  });
}

NormBounds shell_field_norm_bounds(const AnisotropyProfile& profile, int k,
                                   double p) {
  if (k < 1) {
    throw validation_error("norm bounds are defined for shell index >= 1");
  }
  std::vector<double> outer(profile.dim());
  std::vector<double> inner(profile.dim());
  for (int ax = 0; ax < profile.dim(); ++ax) {
    outer[ax] = profile.layer_bound(ax, k);
    inner[ax] = profile.layer_bound(ax, k - 1);
  }
  const double hi = sinc_product_norm(make_sinc_spec(outer), p);
  const double lo = sinc_product_norm(make_sinc_spec(inner), p);
  return NormBounds{std::abs(hi - lo), hi + lo};
}

LowerBoundWitness lower_bound_witness(const AnisotropyProfile& profile, int n,
                                      double p, const GridSpec& grid,
                                      WitnessConstruction construction) {
  if (n < 1) {
    throw validation_error("witness shell index must be at least 1");
  }
  require_shell_fits(profile, n, grid);
  SampledField base = construction == WitnessConstruction::spectral
                          ? shell_indicator_field(profile, n, grid)
                          : shell_field(profile, n, grid);
  BesovParams params;
  params.profile = profile;
  params.p = p;
  params.theta = 1.0;
  params.s_max = n;
  const double base_norm = block_norm(base, params);
  if (!(base_norm > 0.0)) {
    throw guard_error("witness base field has empty spectrum on this grid");
  }
  const double inv_conj = conjugate_exponent_reciprocal(p);
  const double prefactor =
      std::exp2(-static_cast<double>(n) *
                (profile.g + profile.dim() * inv_conj));
  LowerBoundWitness witness;
  witness.prefactor = prefactor;
  witness.c1 = 1.0 / (prefactor * base_norm);
  witness.field = scale(base, 1.0 / base_norm);
  return witness;
}

}  // namespace anisobesov
