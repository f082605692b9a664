#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "pmfde/errors.hpp"

namespace pmfde {

// Critical exponent (n-2)_+/n below which the estimates used here break down.
inline double critical_exponent(int n) {
  return n > 2 ? static_cast<double>(n - 2) / n : 0.0;
}

/// Validated nonlinearity power m in dimension n, restricted to m > (n-2)_+/n.
struct Exponent {
  double m;
  int n;
};

inline Exponent make_exponent(double m, int n) {
  if (n < 1) throw SubcriticalExponent("dimension must be >= 1, got n=" + std::to_string(n));
  const double mc = critical_exponent(n);
  if (!(m > mc)) {
    throw SubcriticalExponent("m=" + std::to_string(m) + " is not above m_c=" +
                              std::to_string(mc) + " in dimension n=" + std::to_string(n));
  }
  return Exponent{m, n};
}

// The source solution exponent n/(n(m-1)+2) and the smoothing exponent
// n(m-1)+2 are distinct constants; neither is ever called just "lambda".
struct DerivedConstants {
  double m_c;
  double barenblatt_lambda;  // n/(n(m-1)+2)
  double barenblatt_k;       // lambda(1-m)/(2mn), positive only for m_c < m < 1
  double smoothing_lambda;   // n(m-1)+2
  double kappa_sobolev;      // 1 + 1/n + 1/(mn)
  double kappa_stability;    // 1 + 1/m + 1/(mn)
  double m_sharp;            // max(m, 1)
  double m_flat;             // min(m, 1)
};

inline DerivedConstants derive_constants(const Exponent& e) {
  DerivedConstants c;
  const double m = e.m;
  const double n = static_cast<double>(e.n);
  c.m_c = critical_exponent(e.n);
  c.smoothing_lambda = n * (m - 1.0) + 2.0;
  c.barenblatt_lambda = n / c.smoothing_lambda;
  c.barenblatt_k = m < 1.0 ? c.barenblatt_lambda * (1.0 - m) / (2.0 * m * n) : 0.0;
  c.kappa_sobolev = 1.0 + 1.0 / n + 1.0 / (m * n);
  c.kappa_stability = 1.0 + 1.0 / m + 1.0 / (m * n);
  c.m_sharp = std::max(m, 1.0);
  c.m_flat = std::min(m, 1.0);
  return c;
}

}  // namespace pmfde
