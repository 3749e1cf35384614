#include "anisobesov/anisotropy.hpp"

#include <cmath>
#include <string>

#include "anisobesov/errors.hpp"

namespace anisobesov {

namespace {

void check_components(std::span<const double> r) {
  if (r.empty()) {
    throw validation_error("smoothness vector must have at least one component");
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!(r[j] > 0.0) || !std::isfinite(r[j])) {
      throw validation_error("smoothness component r[" + std::to_string(j) +
                             "] must be positive, got " + std::to_string(r[j]));
    }
  }
}

}  // namespace

double harmonic_exponent(std::span<const double> r) {
  check_components(r);
  double sum = 0.0;
  for (double rj : r) sum += 1.0 / rj;
  return static_cast<double>(r.size()) / sum;
}

AnisotropyProfile make_profile(std::vector<double> r) {
  AnisotropyProfile profile;
  profile.g = harmonic_exponent(r);
  profile.b = std::exp2(profile.g);
  profile.a.reserve(r.size());
  profile.integer_parts.reserve(r.size());
  profile.fractional_parts.reserve(r.size());
  for (double ri : r) {
    profile.a.push_back(std::exp2(profile.g / ri));
    // r_i = bar + alpha with alpha in (0,1]; integer r_i takes alpha = 1.
    double bar = std::ceil(ri) - 1.0;
    if (bar < 0.0) bar = 0.0;
    profile.integer_parts.push_back(static_cast<int>(bar));
    profile.fractional_parts.push_back(ri - bar);
  }
  profile.r = std::move(r);
  return profile;
}

double AnisotropyProfile::layer_bound(int axis, int s) const {
  return std::exp2(static_cast<double>(s) * g / r[static_cast<std::size_t>(axis)]);
}

}  // namespace anisobesov
