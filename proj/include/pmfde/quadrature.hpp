#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "pmfde/errors.hpp"

namespace pmfde {

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// integral over [a, infinity) via r = a + x/(1-x), x in [0,1)
inline double adaptive_simpson_to_inf(const std::function<double(double)>& f, double a,
                                      double tol = 1e-12) {
  auto g = [&](double x) {
    if (x >= 1.0) return 0.0;
    const double om = 1.0 - x;
    return f(a + x / om) / (om * om);
  };
  return adaptive_simpson(g, 0.0, 1.0 - 1e-14, tol);
}

/// Bisection for a continuous monotone increasing function; the bracket is
/// grown geometrically from the initial guesses if needed.
inline double find_root_increasing(const std::function<double(double)>& f, double lo, double hi,
                                   double xtol = 1e-14, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  int grow = 0;
  while (flo > 0.0 && grow < 60) {
    lo *= 0.5;
    flo = f(lo);
    ++grow;
  }
  while (fhi < 0.0 && grow < 120) {
    hi *= 2.0;
    fhi = f(hi);
    ++grow;
  }
  if (flo > 0.0 || fhi < 0.0)
    throw NormalizationFailed("could not bracket root");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < xtol * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pmfde
