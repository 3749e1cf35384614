#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace anisobesov {

// Uniform tensor grid on the box prod_j [-L_j, L_j): points x_j = -L_j + m h_j
// with h_j = 2 L_j / N_j, m = 0..N_j-1, N_j even. The matching frequency grid
// is lambda_j = k delta_j with delta_j = pi / L_j and k = -N_j/2..N_j/2-1, so
// the representable band is |lambda_j| <= nyquist(j) = pi N_j / (2 L_j).
struct GridSpec {
  std::vector<double> half_width;
  std::vector<int> samples;

  int dim() const { return static_cast<int>(samples.size()); }
  std::size_t total() const;
  double step(int axis) const;
  double freq_step(int axis) const;
  double nyquist(int axis) const;
  double point(int axis, int index) const;
  // Frequency at storage position pos in [0, N): lambda = (pos - N/2) delta.
  double frequency(int axis, int pos) const;
  // Row-major flattening, axis 0 outermost.
  std::size_t flatten(const std::vector<int>& idx) const;
  void unflatten(std::size_t flat, std::vector<int>& idx) const;
};

GridSpec make_grid(std::vector<double> half_width, std::vector<int> samples);
bool same_grid(const GridSpec& a, const GridSpec& b);

// Point samples f(x_m) stored in grid order.
struct SampledField {
  GridSpec grid;
  std::vector<std::complex<double>> values;
};

// Transform coefficients stored in ascending-frequency order: storage
// position p along each axis holds wavenumber k = p - N/2.
struct SpectralField {
  GridSpec grid;
  std::vector<std::complex<double>> coeffs;
};

SampledField zero_field(const GridSpec& grid);

// Evaluates fn at every grid point; fn receives the coordinate vector.
SampledField sample(
    const GridSpec& grid,
    const std::function<std::complex<double>(const std::vector<double>&)>& fn);

// Discrete surrogate for the unitary Fourier transform
// (2 pi)^{-d/2} integral f(x) exp(-i lambda.x) dx on the grid above.
// inverse_transform(forward_transform(f)) reproduces f except for rounding,
// and sum |C|^2 prod delta == sum |f|^2 prod h holds exactly in exact
// arithmetic. Not safe to call concurrently (shared FFTW planner).
SpectralField forward_transform(const SampledField& f);
SampledField inverse_transform(const SpectralField& c);

// Riemann-sum L_p norm: (sum |f|^p prod h)^{1/p} for finite p >= 1,
// max |f| for p = infinity.
double lp_norm(const SampledField& f, double p);

// Parseval L_2 norm computed in frequency: (sum |C|^2 prod delta)^{1/2}.
double l2_norm(const SpectralField& c);

SampledField add(const SampledField& a, const SampledField& b);
SampledField subtract(const SampledField& a, const SampledField& b);
SampledField scale(const SampledField& a, std::complex<double> factor);
SpectralField add(const SpectralField& a, const SpectralField& b);
SpectralField subtract(const SpectralField& a, const SpectralField& b);
SpectralField scale(const SpectralField& a, std::complex<double> factor);

}  // namespace anisobesov
