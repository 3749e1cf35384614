#pragma once

#include <span>
#include <vector>

namespace anisobesov {

// Smoothness vector r together with every derived dyadic parameter.
// Immutable after construction; freely shareable across threads.
//
// Invariants (enforced by make_profile, checked in tests):
//   g       = (d^{-1} sum_j 1/r_j)^{-1}
//   a_j     = 2^{g/r_j},  so a_j^{r_j} = b for every j
//   b       = 2^g
//   prod_j a_j = 2^d
//   r_i     = integer_parts[i] + fractional_parts[i],  fractional in (0,1]
struct AnisotropyProfile {
  std::vector<double> r;
  double g = 0.0;
  std::vector<double> a;
  double b = 0.0;
  std::vector<int> integer_parts;
  std::vector<double> fractional_parts;

  int dim() const { return static_cast<int>(r.size()); }

  // a_j^s, evaluated as 2^{s g / r_j} for stability at large s.
  double layer_bound(int axis, int s) const;
};

// Harmonic mean of the smoothness orders. Symmetric, 1-homogeneous,
// and pinched between min r_j and max r_j.
double harmonic_exponent(std::span<const double> r);

// Builds the profile and all derived quantities eagerly. Integer r_i is
// split as integer_parts = r_i - 1, fractional = 1 so the fractional part
// stays in (0, 1].
AnisotropyProfile make_profile(std::vector<double> r);

}  // namespace anisobesov
