#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "pmfde/errors.hpp"
#include "pmfde/estimates.hpp"
#include "pmfde/params.hpp"
#include "pmfde/solver.hpp"

namespace pmfde {

/// Exponent-stability sweep: fixed data, exponents m + delta_i around the
/// target, errors against the target run on the identical grid and config so
/// discretization bias partially cancels in the difference.
struct SweepSpec {
  double target_m = 2.0;
  std::vector<double> deltas;  // mixed signs allowed; 0 acts as a control
  std::variant<DirichletProblem, CauchyProblem> problem_template;
  double q = 2.0;        // L^q norm for u_i - u
  double s = 2.0;        // L^s norm for u_i^{m_i} - u^m
  double S_radius = 0.0; // Cauchy sweeps: spatial window; 0 = whole grid
  SolverConfig config;
  std::string resolution_tag = "base";
};

struct SweepRow {
  double delta = 0.0;
  double m_i = 0.0;
  double error_lq = 0.0;
  double error_power_ls = 0.0;
  double weak_defect_max = 0.0;
  bool failed = false;
  std::string failure;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // sorted by |delta|
};

namespace detail {

// Fixed dictionary of 5 smooth radial test fields for the weak-gradient
// pairing; chosen once so sweeps are deterministic and comparable.
inline std::vector<std::function<double(double)>> test_dictionary(double scale) {
  return {
      [scale](double r) { return std::exp(-r * r / (scale * scale)); },
      [scale](double r) { return std::cos(3.14159265358979323846 * r / scale); },
      [scale](double r) { const double s = 1.0 - (r / scale) * (r / scale); return s > 0 ? s * s : 0.0; },
      [scale](double r) { return 1.0 / (1.0 + r * r / (scale * scale)); },
      [scale](double r) { return std::sin(2.0 * 3.14159265358979323846 * r / scale) * scale; },
  };
}

// |int int (grad u_i^{m_i} - grad u^m) . grad phi| maximized over the
// dictionary; gradients by the same face differences the solver uses.
inline double weak_pairing_defect(const Geometry& geo, const Trajectory& ref, double m_ref,
                                  const Trajectory& per, double m_per, double scale) {
  const auto dict = test_dictionary(scale);
  double worst = 0.0;
  for (const auto& phi : dict) {
    double pairing = 0.0;
    for (int k = 1; k < ref.levels(); ++k) {
      const double dt = ref.times[k] - ref.times[k - 1];
      for (int i = 1; i < geo.cells; ++i) {
        const double dw_ref = (upow(ref.fields[k][i], m_ref) - upow(ref.fields[k][i - 1], m_ref)) / geo.h;
        const double dw_per = (upow(per.fields[k][i], m_per) - upow(per.fields[k][i - 1], m_per)) / geo.h;
        const double rf = 0.5 * (geo.x[i] + geo.x[i - 1]);
        const double dphi = (phi(rf + 0.5e-6) - phi(rf - 0.5e-6)) / 1e-6;
        pairing += (dw_per - dw_ref) * dphi * geo.face_area[i] * geo.h * dt;
      }
    }
    worst = std::max(worst, std::abs(pairing));
  }
  return worst;
}

inline double spacetime_lq(const Geometry& geo, const Trajectory& a, const Trajectory& b,
                           double q, double ma, double mb, bool powers, double S_radius) {
  double s = 0.0;
  for (int k = 1; k < a.levels(); ++k) {
    const double dt = a.times[k] - a.times[k - 1];
    for (int i = 0; i < geo.cells; ++i) {
      if (S_radius > 0.0 && geo.x[i] > S_radius) break;
      const double va = powers ? upow(a.fields[k][i], ma) : a.fields[k][i];
      const double vb = powers ? upow(b.fields[k][i], mb) : b.fields[k][i];
      s += std::pow(std::abs(va - vb), q) * geo.volume[i] * dt;
    }
  }
  return std::pow(s, 1.0 / q);
}

template <typename Problem>
SweepResult run_sweep(const SweepSpec& spec, const Problem& tmpl, int n, double scale) {
  // exponent validation up front: every m_i must stay supercritical
  for (double d : spec.deltas) make_exponent(spec.target_m + d, n);

  Problem ref_problem = tmpl;
  ref_problem.exponent = make_exponent(spec.target_m, n);
  Trajectory ref;
  if constexpr (std::is_same_v<Problem, DirichletProblem>)
    ref = solve_dirichlet(ref_problem, spec.config);
  else
    ref = solve_cauchy(ref_problem, spec.config);

  Geometry geo;
  if constexpr (std::is_same_v<Problem, DirichletProblem>)
    geo = geometry_of(tmpl.grid);
  else
    geo = geometry_of(tmpl.grid);

  SweepResult result;
  result.spec = spec;
  std::vector<double> order(spec.deltas.begin(), spec.deltas.end());
  std::sort(order.begin(), order.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  for (double d : order) {
    SweepRow row;
    row.delta = d;
    row.m_i = spec.target_m + d;
    try {
      Problem p = tmpl;
      p.exponent = make_exponent(row.m_i, n);
      Trajectory per;
      if constexpr (std::is_same_v<Problem, DirichletProblem>)
        per = solve_dirichlet(p, spec.config);
      else
        per = solve_cauchy(p, spec.config);
      row.error_lq = spacetime_lq(geo, per, ref, spec.q, 0, 0, false, spec.S_radius);
      row.error_power_ls =
          spacetime_lq(geo, per, ref, spec.s, row.m_i, spec.target_m, true, spec.S_radius);
      row.weak_defect_max = weak_pairing_defect(geo, ref, spec.target_m, per, row.m_i, scale);
    } catch (const Error& e) {
      row.failed = true;
      row.failure = e.what();
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace detail

inline SweepResult run_dirichlet_sweep(const SweepSpec& spec) {
  const auto& tmpl = std::get<DirichletProblem>(spec.problem_template);
  if (spec.q >= 1.0 + spec.target_m)
    throw ExponentOutOfRange("Dirichlet sweep requires q < 1 + m");
  const DerivedConstants dc = derive_constants(tmpl.exponent);
  if (spec.s >= 2.0 * std::min(dc.kappa_sobolev, dc.kappa_stability))
    throw ExponentOutOfRange("Dirichlet sweep requires s < 2 min(kappa)");
  double scale = 1.0;
  if (std::holds_alternative<RadialGrid>(tmpl.grid))
    scale = std::get<RadialGrid>(tmpl.grid).r_max;
  else {
    const auto& g = std::get<IntervalGrid>(tmpl.grid);
    scale = g.b - g.a;
  }
  return detail::run_sweep(spec, tmpl, tmpl.exponent.n, scale);
}

inline SweepResult run_cauchy_sweep(const SweepSpec& spec) {
  const auto& tmpl = std::get<CauchyProblem>(spec.problem_template);
  const double m = spec.target_m;
  const int n = tmpl.exponent.n;
  if (spec.q >= m + 2.0 / n) throw ExponentOutOfRange("Cauchy sweep requires q < m + 2/n");
  if (spec.s >= 1.0 + 2.0 / (m * n))
    throw ExponentOutOfRange("Cauchy sweep requires s < 1 + 2/(mn)");
  if (spec.S_radius >= tmpl.grid.r_max)
    throw CylinderOutOfRange("window radius must stay inside the truncation radius");
  return detail::run_sweep(spec, tmpl, n, tmpl.grid.r_max);
}

/// Least-squares slope of log error vs log |delta| over the successful
/// nonzero-delta rows, plus the realized constant max error / |delta|^ref.
inline std::pair<double, double> fit_rate(const SweepResult& result, double reference_exponent) {
  std::vector<std::pair<double, double>> pts;
  double constant = 0.0;
  for (const auto& row : result.rows) {
    if (row.failed || row.delta == 0.0 || row.error_lq <= 0.0) continue;
    pts.emplace_back(std::log(std::abs(row.delta)), std::log(row.error_lq));
    constant = std::max(constant,
                        row.error_lq / std::pow(std::abs(row.delta), reference_exponent));
  }
  if (pts.size() < 3) throw InsufficientData("rate fit needs at least 3 usable deltas");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(pts.size());
  const double order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return {order, constant};
}

}  // namespace pmfde
