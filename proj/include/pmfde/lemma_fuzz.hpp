#pragma once

#include <cmath>
#include <random>
#include <string>

#include "pmfde/scalar_inequalities.hpp"

namespace pmfde {

struct FuzzResult {
  std::string name;
  long long trials = 0;
  long long violations = 0;
  double worst_realized = 0.0;  // closest approach to the bound (ratio lhs/bound)
};

/// Random pairs 0 <= s < t <= M with exponents straddling 1: the flat-power
/// gap must dominate the stated lower bound.
inline FuzzResult fuzz_power_gap(long long trials, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> um(1.0, 3.0), uf(0.05, 1.0), uM(1.0, 10.0),
      u01(0.0, 1.0);
  FuzzResult r{"power_gap", trials, 0, 0.0};
  double worst = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < trials; ++i) {
    const double ms = um(rng), mf = uf(rng), M = uM(rng);
    double t = M * u01(rng), s = t * u01(rng);
    const double gap = std::pow(t, ms) - std::pow(s, ms);
    if (gap <= 0.0) { t = std::nextafter(s, M); continue; }
    const double bound = power_gap_lower_bound({ms, mf, M, gap});
    const double lhs = std::pow(t, mf) - std::pow(s, mf);
    if (lhs < bound * (1.0 - 1e-12)) ++r.violations;
    if (bound > 0.0) worst = std::min(worst, lhs / bound);
  }
  r.worst_realized = worst;
  return r;
}

/// (a^m - b^m)(a - b) >= |a - b|^{1+m} for a, b >= 0, m >= 1; the sharp
/// constant 1 is attained in the b = 0 limit.
inline FuzzResult fuzz_monotonicity(long long trials, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> um(1.0, 3.0), uv(0.0, 10.0);
  FuzzResult r{"monotonicity", trials, 0, 0.0};
  double worst = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < trials; ++i) {
    const double m = um(rng), a = uv(rng), b = uv(rng);
    if (a == b) continue;
    const double c = monotonicity_constant(m, a, b);
    if (c < 1.0 - 1e-12) ++r.violations;
    worst = std::min(worst, c);
  }
  r.worst_realized = worst;
  return r;
}

/// |t^a - t^b| against the stored eps = 0.1 constant over the sweep ranges.
inline FuzzResult fuzz_power_difference(long long trials, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ulogt(std::log(1e-6), std::log(1e6)),
      uab(-5.0, 5.0);
  FuzzResult r{"power_difference", trials, 0, 0.0};
  double worst = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const double t = std::exp(ulogt(rng));
    const double a = uab(rng), b = uab(rng);
    if (a == b) continue;
    const double lhs = std::abs(std::pow(t, a) - std::pow(t, b));
    const double bound = power_difference_bound(t, a, b, 0.1);
    if (lhs > bound * (1.0 + 1e-12)) ++r.violations;
    if (bound > 0.0 && std::isfinite(lhs / bound)) worst = std::max(worst, lhs / bound);
  }
  r.worst_realized = worst;
  return r;
}

}  // namespace pmfde
