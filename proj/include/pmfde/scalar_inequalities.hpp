#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pmfde/errors.hpp"

namespace pmfde {

/// Hypotheses of the power-gap estimate: exponent pair straddling 1,
/// an upper bound M >= 1 for the arguments, and the assumed gap in the
/// sharp power.
struct PowerPair {
  double m_sharp;    // >= 1
  double m_flat;     // in (0, 1]
  double M;          // >= 1
  double lambda_gap; // > 0
};

/// Lower bound for t^{m_flat} - s^{m_flat} given t^{m_sharp} - s^{m_sharp} >= gap,
/// 0 <= s < t <= M.
inline double power_gap_lower_bound(const PowerPair& pp) {
  const double ratio = pp.m_flat / pp.m_sharp;
  const double lam = pp.lambda_gap;
  return ratio * std::pow(pp.M, pp.m_flat - pp.m_sharp) *
         std::min(lam, std::pow(lam, ratio));
}

// Smallest constant found by dense offline maximization of
// |t^a - t^b| / ((1 + t^{a+eps} + t^{b+eps}) |a-b|) over t in [1e-6, 1e6],
// |a|, |b| <= 5, at eps = 0.1. The sup is attained in the a -> b limit at
// the lower end of the t range, where the ratio equals |log t| t^{-eps} / 2.
inline constexpr double kPowerDifferenceC01 = 27.5003;

/// Right-hand side of |t^alpha - t^beta| <= c_eps (1 + t^{alpha+eps} + t^{beta+eps}) |alpha-beta|
/// with the stored constant for eps = 0.1 (scaled to other eps via the same sweep logic
/// is not supported; callers pass eps = 0.1).
inline double power_difference_bound(double t, double alpha, double beta, double epsilon) {
  const double c = kPowerDifferenceC01;
  return c * (1.0 + std::pow(t, alpha + epsilon) + std::pow(t, beta + epsilon)) *
         std::abs(alpha - beta);
}

/// Realized constant (a^m - b^m)(a - b) / |a - b|^{1+m} for m >= 1.
/// The degenerate pair a = b carries no information for the infima the
/// callers take, so it maps to the sentinel max.
inline double monotonicity_constant(double m, double a, double b) {
  if (a == b) return std::numeric_limits<double>::max();
  const double num = (std::pow(a, m) - std::pow(b, m)) * (a - b);
  return num / std::pow(std::abs(a - b), 1.0 + m);
}

/// Tail test for values_i^{exponents_i} -> limit_value^{limit_exponent}:
/// the last quarter of the sequence must fit in a tolerance band that the
/// preceding quarter does not violate by more than the shrink factor.
inline bool powers_converge(const std::vector<double>& values,
                            const std::vector<double>& exponents, double limit_value,
                            double limit_exponent, double tol = 1e-6) {
  if (values.size() != exponents.size())
    throw LengthMismatch("values and exponents have different lengths");
  const std::size_t n = values.size();
  if (n < 4) return false;
  // zero values power to zero, matching the convention for vanishing limits
  auto powz = [](double v, double e) { return v == 0.0 ? 0.0 : std::pow(v, e); };
  const double target = powz(limit_value, limit_exponent);
  auto dev = [&](std::size_t i) { return std::abs(powz(values[i], exponents[i]) - target); };
  double tail_max = 0.0;
  for (std::size_t i = n - n / 4; i < n; ++i) tail_max = std::max(tail_max, dev(i));
  double mid_max = 0.0;
  for (std::size_t i = n / 2; i < n - n / 4; ++i) mid_max = std::max(mid_max, dev(i));
  return tail_max <= std::max(tol, 0.9 * mid_max) ||
         (tail_max <= tol && mid_max <= tol);
}

}  // namespace pmfde
