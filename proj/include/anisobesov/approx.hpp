#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "anisobesov/anisotropy.hpp"
#include "anisobesov/field.hpp"

namespace anisobesov {

// L_q distance from f to its band limitation onto box n-1 of the profile:
// the section-operator approximation error at resolution level n >= 1.
// Requires 1 < q < infinity.
double truncation_error(const SampledField& f,
                        const AnisotropyProfile& profile, int n, double q);

struct TheoreticalRate {
  double value = 0.0;  // g - d(1/p - 1/q)
  // False when value <= 0: the class embeds no decay at this (p, q).
  bool feasible = false;
};

// Decay exponent predicted for the class: errors should scale like
// 2^{-n * value}. Requires 1 < p <= q < infinity.
TheoreticalRate theoretical_rate(const AnisotropyProfile& profile, double p,
                                 double q);

struct RateRow {
  int n = 0;
  double error = 0.0;
};

struct RateReport {
  std::vector<RateRow> rows;
  double fitted_slope = 0.0;
  double theoretical_exponent = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::vector<double> r;
  GridSpec grid;
};

struct RateScanOptions {
  // Family members whose layerwise norm (theta = 1) exceeds 1 by more than
  // this are rescaled onto the unit ball before measuring.
  double membership_tol = 1e-6;
  // Rows with error at or below this level are kept in the table but
  // excluded from the slope fit (quadrature noise floor).
  double noise_floor = 0.0;
};

// Measures truncation_error for each n, fits a least-squares slope to
// (n, log2 error), and records the theoretical exponent alongside.
// Needs at least three usable rows.
RateReport rate_scan(const std::function<SampledField(int)>& family,
                     const AnisotropyProfile& profile, double p, double q,
                     const std::vector<int>& n_values,
                     const RateScanOptions& opts = {});

// Writes <stem>.csv with header "n,error,log2_error" and <stem>.json with
// the fit summary and scan parameters.
void save_rate_report(const RateReport& report, const std::string& stem);

struct NikolskiiCheck {
  double lhs = 0.0;    // |g|_{p2}
  double rhs = 0.0;    // 2^d (prod nu_j)^{1/p1 - 1/p2} |g|_{p1}
  double ratio = 0.0;  // lhs / rhs
  bool pass = false;
};

// Different-metrics inequality for a field band-limited to the box with
// bounds nu (verified spectrally, energy fraction 1e-8). Requires
// 1 < p1 <= p2 <= infinity.
NikolskiiCheck nikolskii_check(const SampledField& g,
                               const std::vector<double>& nu, double p1,
                               double p2);

// Field with independent complex Gaussian coefficients on the grid
// frequencies inside the nu-box and zero outside. Identical seeds give
// identical fields on every platform.
SampledField random_band_limited(const GridSpec& grid,
                                 const std::vector<double>& nu,
                                 std::uint64_t seed);

}  // namespace anisobesov
