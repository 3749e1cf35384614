#include "anisobesov/approx.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "anisobesov/besov.hpp"
#include "anisobesov/errors.hpp"
#include "anisobesov/parallel.hpp"
#include "anisobesov/serialization.hpp"
#include "anisobesov/spectral.hpp"

namespace anisobesov {

namespace {

void require_open_exponent(double q, const char* name) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw validation_error(std::string(name) +
                           " must lie in the open interval (1, infinity)");
  }
}

// Least squares slope of y against x.
double fitted_line_slope(const std::vector<double>& x,
                         const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw guard_error("slope fit is degenerate: all n coincide");
  }
  return sxy / sxx;
}

}  // namespace

double truncation_error(const SampledField& f,
                        const AnisotropyProfile& profile, int n, double q) {
  if (n < 1) {
    throw validation_error("resolution level n must be at least 1");
  }
  require_open_exponent(q, "target exponent q");
  const SampledField section = fourier_section(f, layer_box(profile, n - 1));
  return lp_norm(subtract(f, section), q);
}

TheoreticalRate theoretical_rate(const AnisotropyProfile& profile, double p,
                                 double q) {
  require_open_exponent(p, "source exponent p");
  require_open_exponent(q, "target exponent q");
  if (p > q) {
    throw validation_error("the rate formula needs p <= q");
  }
  const double value =
      profile.g - profile.dim() * (1.0 / p - 1.0 / q);
  return TheoreticalRate{value, value > 0.0};
}

RateReport rate_scan(const std::function<SampledField(int)>& family,
                     const AnisotropyProfile& profile, double p, double q,
                     const std::vector<int>& n_values,
                     const RateScanOptions& opts) {
  if (n_values.size() < 3) {
    throw validation_error("rate scan needs at least three values of n");
  }
  const TheoreticalRate rate = theoretical_rate(profile, p, q);

  RateReport report;
  report.p = p;
  report.q = q;
  report.r = profile.r;
  report.theoretical_exponent = rate.value;

  for (int n : n_values) {
    SampledField f = family(n);
    if (report.rows.empty()) report.grid = f.grid;

    BesovParams membership;
    membership.profile = profile;
    membership.p = p;
    membership.theta = 1.0;
    membership.s_max = feasible_layer_count(profile, f.grid);
    const double ball = block_norm(f, membership);
    if (!(ball > 0.0)) {
      throw guard_error("family member at n = " + std::to_string(n) +
                        " has zero layerwise norm");
    }
    if (ball > 1.0 + opts.membership_tol) {
      f = scale(f, 1.0 / ball);
    }
    report.rows.push_back(RateRow{n, truncation_error(f, profile, n, q)});
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const RateRow& row : report.rows) {
    if (row.error <= opts.noise_floor || !(row.error > 0.0)) continue;
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(std::log2(row.error));
  }
  if (xs.size() < 3) {
    throw guard_error(
        "slope fit is degenerate: fewer than three rows above the noise "
        "floor");
  }
  report.fitted_slope = fitted_line_slope(xs, ys);
  return report;
}

void save_rate_report(const RateReport& report, const std::string& stem) {
  if (report.rows.empty()) {
    throw validation_error("rate report has no rows to save");
  }
  std::ofstream csv(stem + ".csv", std::ios::binary);
  if (!csv) {
    throw validation_error("cannot open '" + stem + ".csv' for writing");
  }
  csv << "n,error,log2_error\n";
  char buf[96];
  for (const RateRow& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", row.n, row.error,
                  std::log2(row.error));
    csv << buf;
  }
  if (!csv) {
    throw validation_error("write to '" + stem + ".csv' failed");
  }
  const nlohmann::json sidecar{
      {"fitted_slope", report.fitted_slope},
      {"theoretical_exponent", report.theoretical_exponent},
      {"p", report.p},
      {"q", report.q},
      {"r", report.r},
      {"grid", grid_to_json(report.grid)}};
  std::ofstream json_out(stem + ".json", std::ios::binary);
  if (!json_out) {
    throw validation_error("cannot open '" + stem + ".json' for writing");
  }
  json_out << sidecar.dump(2) << '\n';
}

NikolskiiCheck nikolskii_check(const SampledField& g,
                               const std::vector<double>& nu, double p1,
                               double p2) {
  require_open_exponent(p1, "source exponent p1");
  if (!(p2 >= p1)) {
    throw validation_error("different-metrics check needs p1 <= p2");
  }
  if (!std::isinf(p2)) require_open_exponent(p2, "target exponent p2");
  const FrequencyBox box = make_box(nu);
  if (static_cast<int>(nu.size()) != g.grid.dim()) {
    throw validation_error("degree vector dimension does not match the field");
  }

  const SpectralField coeffs = forward_transform(g);
  const auto mask = box_mask(box, g.grid);
  const double total = parallel_sum(
      coeffs.coeffs.size(),
      [&](std::size_t i) { return std::norm(coeffs.coeffs[i]); });
  const double outside = parallel_sum(coeffs.coeffs.size(), [&](std::size_t i) {
    return mask[i] == 0 ? std::norm(coeffs.coeffs[i]) : 0.0;
  });
  if (total > 0.0 && outside > 1e-8 * total) {
    throw guard_error("field is not band-limited to the given box: " +
                      std::to_string(outside / total) +
                      " of its energy lies outside");
  }

  NikolskiiCheck check;
  check.lhs = lp_norm(g, p2);
  double degrees_factor = 1.0;
  for (double v : nu) degrees_factor *= v;
  const double inv_p2 = std::isinf(p2) ? 0.0 : 1.0 / p2;
  check.rhs = std::exp2(static_cast<double>(g.grid.dim())) *
              std::pow(degrees_factor, 1.0 / p1 - inv_p2) * lp_norm(g, p1);
  check.ratio = check.rhs > 0.0 ? check.lhs / check.rhs : 0.0;
  check.pass = check.lhs <= check.rhs * (1.0 + 1e-6);
  return check;
}

SampledField random_band_limited(const GridSpec& grid,
                                 const std::vector<double>& nu,
                                 std::uint64_t seed) {
  const auto mask = box_mask(make_box(nu), grid);
  std::mt19937_64 rng(seed);
  // Box-Muller on explicit 53-bit uniforms: std::normal_distribution is
  // implementation-defined, this sequence is not.
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
  };
  SpectralField coeffs{grid, std::vector<std::complex<double>>(grid.total())};
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == 0) continue;
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    coeffs.coeffs[i] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  return inverse_transform(coeffs);
}

}  // namespace anisobesov
