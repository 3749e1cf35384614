#include "anisobesov/besov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "anisobesov/errors.hpp"
#include "anisobesov/parallel.hpp"
#include "anisobesov/spectral.hpp"

namespace anisobesov {

namespace {

void validate_params(const BesovParams& params, const GridSpec& grid) {
  if (!(params.p > 1.0)) {
    throw validation_error("integrability p must exceed 1");
  }
  if (!(params.theta >= 1.0)) {
    throw validation_error("fine index theta must be at least 1");
  }
  if (params.s_max < 0) {
    throw validation_error("block truncation depth must be non-negative");
  }
  if (!(params.residual_tol >= 0.0)) {
    throw validation_error("residual tolerance must be non-negative");
  }
  if (params.profile.dim() != grid.dim()) {
    throw validation_error("profile dimension does not match the field");
  }
}

void check_axis(const GridSpec& grid, int axis) {
  if (axis < 0 || axis >= grid.dim()) {
    throw validation_error("axis " + std::to_string(axis) +
                           " is out of range for a " +
                           std::to_string(grid.dim()) + "-d field");
  }
}

std::size_t axis_stride(const GridSpec& grid, int axis) {
  std::size_t stride = 1;
  for (int ax = grid.dim() - 1; ax > axis; --ax) {
    stride *= static_cast<std::size_t>(grid.samples[ax]);
  }
  return stride;
}

// Signed binomial row c_l = (-1)^(k-l) C(k,l), l = 0..k.
std::vector<double> signed_binomials(int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  double b = 1.0;
  for (int l = 0; l <= k; ++l) {
    c[l] = ((k - l) % 2 == 0 ? b : -b);
    b = b * (k - l) / (l + 1);
  }
  return c;
}

// L_p norm of the k-th finite difference with shift m*h along one axis,
// zero-extended past the box edge.
double difference_norm(const SampledField& f, const std::vector<double>& c,
                       int axis, int m, double p) {
  const std::size_t stride = axis_stride(f.grid, axis);
  const std::size_t n_ax = static_cast<std::size_t>(f.grid.samples[axis]);
  const int k = static_cast<int>(c.size()) - 1;
  auto delta = [&](std::size_t i) {
    const std::size_t pos = (i / stride) % n_ax;
    std::complex<double> acc = 0.0;
    for (int l = 0; l <= k; ++l) {
      const std::size_t from = pos + static_cast<std::size_t>(l) * m;
      if (from >= n_ax) break;
      acc += c[l] * f.values[i + static_cast<std::size_t>(l) * m * stride];
    }
    return std::abs(acc);
  };
  const std::size_t total = f.values.size();
  if (std::isinf(p)) return parallel_max(total, delta);
  double cell = 1.0;
  for (int ax = 0; ax < f.grid.dim(); ++ax) cell *= f.grid.step(ax);
  double sum;
  if (p == 2.0) {
    sum = parallel_sum(total, [&](std::size_t i) {
      const double v = delta(i);
      return v * v;
    });
  } else if (p == 1.0) {
    sum = parallel_sum(total, delta);
  } else {
    sum = parallel_sum(total,
                       [&](std::size_t i) { return std::pow(delta(i), p); });
  }
  return std::pow(sum * cell, 1.0 / p);
}

// Running maxima of difference_norm over shift counts 1..m_cap. Beyond
// m = N_axis every shifted term leaves the box, so the norm plateaus at
// |f|_p; callers cap m_cap accordingly.
std::vector<double> modulus_sweep(const SampledField& f, int order, int axis,
                                  double p, int m_cap) {
  const std::vector<double> c = signed_binomials(order);
  std::vector<double> prefix(static_cast<std::size_t>(m_cap));
  double best = 0.0;
  for (int m = 1; m <= m_cap; ++m) {
    best = std::max(best, difference_norm(f, c, axis, m, p));
    prefix[static_cast<std::size_t>(m) - 1] = best;
  }
  return prefix;
}

int shift_count(double t, double h) {
  if (!(t > 0.0)) return 0;
  return static_cast<int>(std::floor(t / h + 1e-9));
}

}  // namespace

double block_norm(const SampledField& f, const BesovParams& params) {
  validate_params(params, f.grid);
  const int cap = feasible_layer_count(params.profile, f.grid);
  if (params.s_max > cap) {
    throw guard_error("block depth " + std::to_string(params.s_max) +
                      " exceeds the grid's feasible layer count " +
                      std::to_string(cap) + "; use a finer grid");
  }
  const double whole = lp_norm(f, params.p);
  if (whole == 0.0) return 0.0;

  const SpectralField coeffs = forward_transform(f);
  const bool sup_form = std::isinf(params.theta);
  double sum = 0.0;
  double best = 0.0;
  std::vector<std::uint8_t> prev;
  for (int s = 0; s <= params.s_max; ++s) {
    std::vector<std::uint8_t> inner =
        box_mask(layer_box(params.profile, s), f.grid);
    std::vector<std::uint8_t> shell = inner;
    if (s > 0) {
      for (std::size_t i = 0; i < shell.size(); ++i) {
        shell[i] = static_cast<std::uint8_t>(inner[i] & ~prev[i] & 1);
      }
    }
    const double layer_norm =
        lp_norm(inverse_transform(apply_mask(coeffs, shell)), params.p);
    const double weighted =
        std::exp2(static_cast<double>(s) * params.profile.g) * layer_norm;
    if (sup_form) {
      best = std::max(best, weighted);
    } else {
      sum += std::pow(weighted, params.theta);
    }
    prev = std::move(inner);
  }
  std::vector<std::uint8_t> outside(prev.size());
  for (std::size_t i = 0; i < prev.size(); ++i) {
    outside[i] = static_cast<std::uint8_t>(1 - prev[i]);
  }
  const double residual =
      lp_norm(inverse_transform(apply_mask(coeffs, outside)), params.p);
  if (residual > params.residual_tol * whole) {
    throw guard_error(
        "grid under-resolves spectrum: " +
        std::to_string(residual / whole) +
        " of the norm lies outside the outermost block box (tolerance " +
        std::to_string(params.residual_tol) + ")");
  }
  return sup_form ? best : std::pow(sum, 1.0 / params.theta);
}

SampledField spectral_derivative(const SampledField& f, int axis, int order) {
  check_axis(f.grid, axis);
  if (order < 0) {
    throw validation_error("derivative order must be non-negative");
  }
  if (order == 0) return f;

  SpectralField coeffs = forward_transform(f);
  const std::size_t stride = axis_stride(f.grid, axis);
  const std::size_t n_ax = static_cast<std::size_t>(f.grid.samples[axis]);
  const double cutoff = 0.5 * f.grid.nyquist(axis);

  const std::size_t total = coeffs.coeffs.size();
  const double energy = parallel_sum(
      total, [&](std::size_t i) { return std::norm(coeffs.coeffs[i]); });
  const double high = parallel_sum(total, [&](std::size_t i) {
    const int pos = static_cast<int>((i / stride) % n_ax);
    return std::abs(f.grid.frequency(axis, pos)) >= cutoff
               ? std::norm(coeffs.coeffs[i])
               : 0.0;
  });
  if (energy > 0.0 && high > 1e-6 * energy) {
    throw guard_error(
        "field is not smooth enough along axis " + std::to_string(axis) +
        " for spectral differentiation: top-octave energy share " +
        std::to_string(high / energy));
  }

  static constexpr std::complex<double> kUnitPowers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const std::complex<double> rot = kUnitPowers[order % 4];
  std::vector<std::complex<double>> factor(n_ax);
  for (std::size_t pos = 0; pos < n_ax; ++pos) {
    factor[pos] =
        rot * std::pow(f.grid.frequency(axis, static_cast<int>(pos)), order);
  }
  for (std::size_t i = 0; i < total; ++i) {
    coeffs.coeffs[i] *= factor[(i / stride) % n_ax];
  }
  return inverse_transform(coeffs);
}

ModulusResult modulus_of_smoothness(const SampledField& f, int order, int axis,
                                    double t, double p) {
  check_axis(f.grid, axis);
  if (order < 1) {
    throw validation_error("difference order must be at least 1");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw validation_error("shift bound t must be finite and non-negative");
  }
  const int m_t = shift_count(t, f.grid.step(axis));
  if (m_t < 1) return {0.0, false};
  const int m_cap = std::min(m_t, f.grid.samples[axis]);
  const std::vector<double> prefix = modulus_sweep(f, order, axis, p, m_cap);
  return {prefix.back(), true};
}

double definition_norm(const SampledField& f, const BesovParams& params,
                       const DefinitionNormOptions& opts) {
  validate_params(params, f.grid);
  if (f.grid.dim() > 2) {
    throw validation_error(
        "the modulus-based norm is implemented for d <= 2 only");
  }
  if (opts.dyadic_levels < 1) {
    throw validation_error("dyadic_levels must be positive");
  }
  const int levels = opts.dyadic_levels;
  const bool sup_form = std::isinf(params.theta);

  double result = lp_norm(f, params.p);
  for (int axis = 0; axis < f.grid.dim(); ++axis) {
    const double alpha = params.profile.fractional_parts[axis];
    const int k = 1 + static_cast<int>(std::floor(alpha));
    const SampledField deriv =
        spectral_derivative(f, axis, params.profile.integer_parts[axis]);
    const double h = f.grid.step(axis);
    const double t_max = std::exp2(levels);
    const int m_cap =
        std::min(shift_count(t_max, h), f.grid.samples[axis]);
    const std::vector<double> prefix =
        m_cap >= 1 ? modulus_sweep(deriv, k, axis, params.p, m_cap)
                   : std::vector<double>{};

    double sum = 0.0;
    double best = 0.0;
    for (int m = -levels; m <= levels; ++m) {
      const double t = std::exp2(-m);
      const int mt = std::min(shift_count(t, h), m_cap);
      if (mt < 1) continue;
      const double omega = prefix[static_cast<std::size_t>(mt) - 1];
      if (sup_form) {
        best = std::max(best, std::pow(t, -alpha) * omega);
      } else {
        sum += std::pow(t, -params.theta * alpha) *
               std::pow(omega, params.theta);
      }
    }
    result += sup_form
                  ? best
                  : std::pow(std::numbers::ln2 * sum, 1.0 / params.theta);
  }
  return result;
}

}  // namespace anisobesov
