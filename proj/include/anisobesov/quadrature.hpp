#pragma once

#include <functional>

namespace anisobesov {

// Adaptive Simpson integration of f over [a, b] to the given absolute
// tolerance. Integrand must be finite on the interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

// Hurwitz zeta sum_{j>=0} (shift + j)^{-s} for s > 1, shift > 0, via
// Euler-Maclaurin with Bernoulli corrections through B_6. Absolute error
// is far below 1e-12 for shift >= 1.
double hurwitz_zeta(double s, double shift);

}  // namespace anisobesov
