#include "anisobesov/quadrature.hpp"

#include <cmath>
#include <cstdlib>

#include "anisobesov/errors.hpp"

namespace anisobesov {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

// Recursion bound keeps pathologically rough integrands from stack overflow;
// the integrands used here (powers of |sin|, Gaussians) converge long before.
double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!(abs_tol > 0.0)) {
    throw validation_error("integration tolerance must be positive");
  }
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, abs_tol, 48);
}

double hurwitz_zeta(double s, double shift) {
  if (!(s > 1.0)) {
    throw validation_error("hurwitz_zeta requires s > 1");
  }
  if (!(shift > 0.0)) {
    throw validation_error("hurwitz_zeta requires a positive shift");
  }
  // Push the Euler-Maclaurin start point far enough out that the truncated
  // correction series (through B_6) is accurate to ~1e-15 even for s near 1.
  double head = 0.0;
  int j = 0;
  while (shift + j < 32.0) {
    head += std::pow(shift + j, -s);
    ++j;
  }
  const double x = shift + j;  // >= 32
  // sum_{m>=x} m^{-s} ~ x^{1-s}/(s-1) + x^{-s}/2 + Bernoulli corrections.
  const double tail0 = std::pow(x, 1.0 - s) / (s - 1.0);
  const double tail1 = 0.5 * std::pow(x, -s);
  const double b2 = s * std::pow(x, -s - 1.0) / 12.0;
  const double b4 =
      -s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0;
  const double b6 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) *
                    std::pow(x, -s - 5.0) / 30240.0;
  return head + tail0 + tail1 + b2 + b4 + b6;
}

}  // namespace anisobesov
