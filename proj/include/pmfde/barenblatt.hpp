#pragma once

#include <cmath>
#include <functional>

#include "pmfde/grid.hpp"
#include "pmfde/params.hpp"
#include "pmfde/quadrature.hpp"

namespace pmfde {

/// Source-type self-similar solution with profile constant C. Covers both
/// branches: compactly supported for m > 1, power tail for m_c < m < 1.
/// The heat-equation case m = 1 is deliberately not handled here.
struct BarenblattProfile {
  Exponent exponent;
  DerivedConstants constants;
  double C = 1.0;
  double total_mass = 0.0;
};

inline BarenblattProfile make_profile(const Exponent& e, double C) {
  BarenblattProfile p;
  p.exponent = e;
  p.constants = derive_constants(e);
  p.C = C;
  p.total_mass = 0.0;
  return p;
}

inline double evaluate(const BarenblattProfile& p, double r, double t) {
  if (t <= 0.0) return 0.0;
  const double m = p.exponent.m;
  const double n = static_cast<double>(p.exponent.n);
  const double lam = p.constants.barenblatt_lambda;
  const double xi2 = r * r / std::pow(t, 2.0 * lam / n);
  if (m > 1.0) {
    const double arg = p.C - lam * (m - 1.0) / (2.0 * m * n) * xi2;
    if (arg <= 0.0) return 0.0;
    return std::pow(t, -lam) * std::pow(arg, 1.0 / (m - 1.0));
  }
  const double arg = p.C + p.constants.barenblatt_k * xi2;
  return std::pow(t, -lam) * std::pow(arg, -1.0 / (1.0 - m));
}

/// Radius of the support at time t (m > 1 only; infinite for m < 1).
inline double support_radius(const BarenblattProfile& p, double t) {
  const double m = p.exponent.m;
  const double n = static_cast<double>(p.exponent.n);
  const double lam = p.constants.barenblatt_lambda;
  if (m <= 1.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(p.C * 2.0 * m * n / (lam * (m - 1.0))) * std::pow(t, lam / n);
}

/// Total mass by adaptive quadrature of the radial closed form at t = 1.
/// The tolerance is relative to a crude fixed-panel estimate so that small-C
/// fast-diffusion profiles (very tall central peaks) stay affordable.
inline double profile_mass(const BarenblattProfile& p, double tol = 1e-11) {
  const int n = p.exponent.n;
  const double surf = n * unit_ball_volume(n);  // |S^{n-1}|, = 2 for n = 1
  auto integrand = [&](double r) {
    return surf * std::pow(r, n - 1) * evaluate(p, r, 1.0);
  };
  auto crude = [&](double a, double b) {
    double s = 0.0;
    const int panels = 256;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) s += integrand(a + (i + 0.5) * h) * h;
    return s;
  };
  if (p.exponent.m > 1.0) {
    const double rf = support_radius(p, 1.0);
    return adaptive_simpson(integrand, 0.0, rf, tol * std::max(1.0, crude(0.0, rf)));
  }
  // split at the profile scale so the adaptive rule sees the core and the
  // algebraic tail separately
  const double rc = std::sqrt(p.C / p.constants.barenblatt_k) + 1.0;
  const double scale = std::max(1.0, crude(0.0, rc));
  return adaptive_simpson(integrand, 0.0, rc, tol * scale) +
         adaptive_simpson_to_inf(integrand, rc, tol * scale);
}

/// Choose C so that the total mass equals one. The mass is pointwise
/// monotone in C (increasing for m > 1, decreasing for m < 1), so the root
/// is unique on each branch.
inline BarenblattProfile normalize(const Exponent& e) {
  if (e.m == 1.0) throw NormalizationFailed("m = 1 is not handled by this module");
  const double sign = e.m > 1.0 ? 1.0 : -1.0;
  auto mass_minus_one = [&](double C) {
    return sign * (profile_mass(make_profile(e, C)) - 1.0);
  };
  const double C = find_root_increasing(mass_minus_one, 1e-4, 10.0);
  BarenblattProfile p = make_profile(e, C);
  p.total_mass = profile_mass(p);
  return p;
}

inline Field sample(const BarenblattProfile& p, const RadialGrid& g, double t) {
  Field f(g.cells);
  for (int i = 0; i < g.cells; ++i) f[i] = evaluate(p, g.cell_centers[i], t);
  return f;
}

inline double lp_distance(const BarenblattProfile& p1, const BarenblattProfile& p2, double t,
                          double p, const RadialGrid& g) {
  if (p1.exponent.n != p2.exponent.n || p1.exponent.n != g.n)
    throw DimensionMismatch("profile/grid dimensions differ");
  double s = 0.0;
  for (int i = 0; i < g.cells; ++i) {
    const double d = std::abs(evaluate(p1, g.cell_centers[i], t) -
                              evaluate(p2, g.cell_centers[i], t));
    s += std::pow(d, p) * g.cell_volumes[i];
  }
  return std::pow(s, 1.0 / p);
}

/// Max PDE defect |d_t u - Lap u^m| of the closed form, by centered
/// differences on the grid, over interior cells away from the free boundary.
inline double residual_check(const BarenblattProfile& p, const RadialGrid& g, double t,
                             double support_margin = 1e-8) {
  const double m = p.exponent.m;
  const int n = g.n;
  const double h = g.h;
  const double dt = 0.5 * h;  // same order so the Richardson ratio is clean
  const double surf_scale = n > 1 ? n * unit_ball_volume(n) : 2.0;
  auto w = [&](int i, double tt) {
    return std::pow(evaluate(p, g.cell_centers[i], tt), m);
  };
  // skip a margin of cells around the m>1 free boundary; the residual is
  // only meaningful where the solution is smooth
  int last = g.cells - 2;
  if (m > 1.0) {
    const double rf = support_radius(p, t);
    last = std::min(last, static_cast<int>(rf / h) - 4);
  }
  double worst = 0.0;
  for (int i = 1; i <= last; ++i) {
    if (evaluate(p, g.cell_centers[i], t) <= support_margin) continue;
    const double du_dt =
        (evaluate(p, g.cell_centers[i], t + dt) - evaluate(p, g.cell_centers[i], t - dt)) /
        (2.0 * dt);
    // radial divergence form on the finite-volume cell
    const double Aout = n > 1 ? surf_scale * std::pow(g.face_radius(i + 1), n - 1) : 2.0;
    const double Ain = n > 1 ? surf_scale * std::pow(g.face_radius(i), n - 1) : 2.0;
    const double vol = g.cell_volumes[i];
    const double lap =
        (Aout * (w(i + 1, t) - w(i, t)) / h - Ain * (w(i, t) - w(i - 1, t)) / h) / vol;
    worst = std::max(worst, std::abs(du_dt - lap));
  }
  return worst;
}

}  // namespace pmfde
