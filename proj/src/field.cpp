#include "anisobesov/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "anisobesov/errors.hpp"
#include "anisobesov/parallel.hpp"

namespace anisobesov {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!same_grid(a, b)) {
    throw validation_error("fields live on different grids");
  }
}

void require_size(const GridSpec& grid, std::size_t n, const char* what) {
  if (n != grid.total()) {
    throw validation_error(std::string(what) +
                           " storage does not match the grid size");
  }
}

// Multiplies v in place by (-1)^(sum of axis indices). Used on both sides of
// the raw DFT to translate between storage order (index 0 first) and the
// centred conventions (x from -L, wavenumber from -N/2).
void apply_checkerboard(std::vector<std::complex<double>>& v,
                        const GridSpec& grid) {
  const int d = grid.dim();
  const int n_last = grid.samples[d - 1];
  const std::size_t rows = v.size() / static_cast<std::size_t>(n_last);
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    int parity = 0;
    for (int ax = d - 2; ax >= 0; --ax) {
      parity += static_cast<int>(rest % grid.samples[ax]);
      rest /= grid.samples[ax];
    }
    double sign = (parity % 2 == 0) ? 1.0 : -1.0;
    std::complex<double>* p = v.data() + row * n_last;
    for (int i = 0; i < n_last; ++i) {
      p[i] *= sign;
      sign = -sign;
    }
  }
}

// (-1)^(sum N_j / 2): constant phase from re-centering the wavenumber grid.
double center_sign(const GridSpec& grid) {
  long s = 0;
  for (int n : grid.samples) s += n / 2;
  return (s % 2 == 0) ? 1.0 : -1.0;
}

void run_fft(std::vector<std::complex<double>>& data, const GridSpec& grid,
             int direction) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_dft(grid.dim(), grid.samples.data(), ptr, ptr,
                                 direction, FFTW_ESTIMATE);
  if (plan == nullptr) {
    throw guard_error("FFT planning failed for this grid");
  }
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace

std::size_t GridSpec::total() const {
  std::size_t n = 1;
  for (int s : samples) n *= static_cast<std::size_t>(s);
  return n;
}

double GridSpec::step(int axis) const {
  return 2.0 * half_width[axis] / samples[axis];
}

double GridSpec::freq_step(int axis) const {
  return std::numbers::pi / half_width[axis];
}

double GridSpec::nyquist(int axis) const {
  return std::numbers::pi * samples[axis] / (2.0 * half_width[axis]);
}

double GridSpec::point(int axis, int index) const {
  return -half_width[axis] + index * step(axis);
}

double GridSpec::frequency(int axis, int pos) const {
  return (pos - samples[axis] / 2) * freq_step(axis);
}

std::size_t GridSpec::flatten(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int ax = 0; ax < dim(); ++ax) {
    flat = flat * samples[ax] + static_cast<std::size_t>(idx[ax]);
  }
  return flat;
}

void GridSpec::unflatten(std::size_t flat, std::vector<int>& idx) const {
  idx.resize(samples.size());
  for (int ax = dim() - 1; ax >= 0; --ax) {
    idx[ax] = static_cast<int>(flat % samples[ax]);
    flat /= samples[ax];
  }
}

GridSpec make_grid(std::vector<double> half_width, std::vector<int> samples) {
  if (half_width.empty() || half_width.size() != samples.size()) {
    throw validation_error(
        "grid needs matching, non-empty half_width and samples lists");
  }
  for (std::size_t j = 0; j < half_width.size(); ++j) {
    if (!(half_width[j] > 0.0) || !std::isfinite(half_width[j])) {
      throw validation_error("grid half_width[" + std::to_string(j) +
                             "] must be positive and finite");
    }
    if (samples[j] < 2 || samples[j] % 2 != 0) {
      throw validation_error("grid samples[" + std::to_string(j) +
                             "] must be even and at least 2");
    }
  }
  return GridSpec{std::move(half_width), std::move(samples)};
}

bool same_grid(const GridSpec& a, const GridSpec& b) {
  return a.half_width == b.half_width && a.samples == b.samples;
}

SampledField zero_field(const GridSpec& grid) {
  return SampledField{grid,
                      std::vector<std::complex<double>>(grid.total())};
}

SampledField sample(
    const GridSpec& grid,
    const std::function<std::complex<double>(const std::vector<double>&)>&
        fn) {
  SampledField out = zero_field(grid);
  const int d = grid.dim();
  parallel_chunks(grid.total(), [&](std::size_t, std::size_t lo,
                                    std::size_t hi) {
    std::vector<int> idx(d);
    std::vector<double> x(d);
    for (std::size_t i = lo; i < hi; ++i) {
      grid.unflatten(i, idx);
      for (int ax = 0; ax < d; ++ax) x[ax] = grid.point(ax, idx[ax]);
      out.values[i] = fn(x);
    }
  });
  return out;
}

SpectralField forward_transform(const SampledField& f) {
  require_size(f.grid, f.values.size(), "sample");
  SpectralField out{f.grid, f.values};
  apply_checkerboard(out.coeffs, f.grid);
  run_fft(out.coeffs, f.grid, FFTW_FORWARD);
  apply_checkerboard(out.coeffs, f.grid);
  double scale = center_sign(f.grid) *
                 std::pow(2.0 * std::numbers::pi, -0.5 * f.grid.dim());
  for (int ax = 0; ax < f.grid.dim(); ++ax) scale *= f.grid.step(ax);
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

SampledField inverse_transform(const SpectralField& c) {
  require_size(c.grid, c.coeffs.size(), "coefficient");
  SampledField out{c.grid, c.coeffs};
  apply_checkerboard(out.values, c.grid);
  run_fft(out.values, c.grid, FFTW_BACKWARD);
  apply_checkerboard(out.values, c.grid);
  double scale = center_sign(c.grid) *
                 std::pow(2.0 * std::numbers::pi, -0.5 * c.grid.dim());
  for (int ax = 0; ax < c.grid.dim(); ++ax) scale *= c.grid.freq_step(ax);
  for (auto& v : out.values) v *= scale;
  return out;
}

double lp_norm(const SampledField& f, double p) {
  require_size(f.grid, f.values.size(), "sample");
  if (std::isinf(p)) {
    return parallel_max(f.values.size(),
                        [&](std::size_t i) { return std::abs(f.values[i]); });
  }
  if (!(p >= 1.0)) {
    throw validation_error("lp_norm requires p >= 1");
  }
  double cell = 1.0;
  for (int ax = 0; ax < f.grid.dim(); ++ax) cell *= f.grid.step(ax);
  double sum;
  if (p == 2.0) {
    sum = parallel_sum(f.values.size(),
                       [&](std::size_t i) { return std::norm(f.values[i]); });
  } else if (p == 1.0) {
    sum = parallel_sum(f.values.size(),
                       [&](std::size_t i) { return std::abs(f.values[i]); });
  } else {
    sum = parallel_sum(f.values.size(), [&](std::size_t i) {
      return std::pow(std::abs(f.values[i]), p);
    });
  }
  return std::pow(sum * cell, 1.0 / p);
}

double l2_norm(const SpectralField& c) {
  require_size(c.grid, c.coeffs.size(), "coefficient");
  double cell = 1.0;
  for (int ax = 0; ax < c.grid.dim(); ++ax) cell *= c.grid.freq_step(ax);
  const double sum = parallel_sum(
      c.coeffs.size(), [&](std::size_t i) { return std::norm(c.coeffs[i]); });
  return std::sqrt(sum * cell);
}

SampledField add(const SampledField& a, const SampledField& b) {
  require_same_grid(a.grid, b.grid);
  SampledField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] += b.values[i];
  }
  return out;
}

SampledField subtract(const SampledField& a, const SampledField& b) {
  require_same_grid(a.grid, b.grid);
  SampledField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] -= b.values[i];
  }
  return out;
}

SampledField scale(const SampledField& a, std::complex<double> factor) {
  SampledField out = a;
  for (auto& v : out.values) v *= factor;
  return out;
}

SpectralField add(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid);
  SpectralField out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] += b.coeffs[i];
  }
  return out;
}

SpectralField subtract(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid);
  SpectralField out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] -= b.coeffs[i];
  }
  return out;
}

SpectralField scale(const SpectralField& a, std::complex<double> factor) {
  SpectralField out = a;
  for (auto& c : out.coeffs) c *= factor;
  return out;
}

}  // namespace anisobesov
