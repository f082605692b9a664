#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pmfde/errors.hpp"
#include "pmfde/params.hpp"
#include "pmfde/solver.hpp"
#include "pmfde/trajectory.hpp"

namespace pmfde {

/// Both sides of an a-priori estimate measured on computed solutions.
/// realized_constant = lhs / rhs_without_constant is the discrete stand-in
/// for the unnamed constants c; satisfied_with is the smallest constant
/// making the inequality hold (equal to realized_constant when rhs > 0).
struct EstimateReport {
  std::string name;
  double lhs = 0.0;
  double rhs_without_constant = 0.0;
  double realized_constant = 0.0;
  double satisfied_with = 0.0;
  std::map<std::string, double> metadata;
};

namespace detail {

inline EstimateReport finish_report(std::string name, double lhs, double rhs,
                                    std::map<std::string, double> meta) {
  if (rhs <= 0.0 && lhs > 0.0)
    throw ZeroData("estimate '" + name + "' has positive lhs with zero rhs");
  EstimateReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs_without_constant = rhs;
  r.realized_constant = rhs > 0.0 ? lhs / rhs : 0.0;
  r.satisfied_with = r.realized_constant;
  r.metadata = std::move(meta);
  return r;
}

// Geometry helpers shared by the estimate quadratures: cell volumes, face
// areas, and the coordinate of each cell center, for either grid flavor.
struct Geometry {
  int cells = 0;
  double h = 0.0;
  std::vector<double> x;       // cell centers
  std::vector<double> volume;  // cell volumes
  std::vector<double> face_area;
  double domain_volume = 0.0;
};

inline Geometry geometry_of(const IntervalGrid& g) {
  Geometry geo;
  geo.cells = g.cells;
  geo.h = g.spacing;
  geo.x = g.cell_centers;
  geo.volume.assign(g.cells, g.spacing);
  geo.face_area.assign(g.cells + 1, 1.0);
  geo.domain_volume = g.b - g.a;
  return geo;
}

inline Geometry geometry_of(const RadialGrid& g) {
  Geometry geo;
  geo.cells = g.cells;
  geo.h = g.h;
  geo.x = g.cell_centers;
  geo.volume = g.cell_volumes;
  geo.face_area.resize(g.cells + 1);
  for (int i = 0; i <= g.cells; ++i) geo.face_area[i] = g.face_area(i);
  geo.face_area[0] = 0.0;
  geo.domain_volume = 0.0;
  for (double v : geo.volume) geo.domain_volume += v;
  return geo;
}

inline Geometry geometry_of(const std::variant<IntervalGrid, RadialGrid>& g) {
  return std::visit([](const auto& gr) { return geometry_of(gr); }, g);
}

inline double cell_integral(const Geometry& geo, const Field& f) {
  double s = 0.0;
  for (int i = 0; i < geo.cells; ++i) s += f[i] * geo.volume[i];
  return s;
}

// Discrete Dirichlet energy sum_faces A |w_{i+1} - w_i|^2 / h, the same face
// differences the solver fluxes use. Boundary faces are excluded (the cell
// quadrature has no ghost values); this under-counts the lhs, which only
// makes the measured inequality honest in the safe direction.
inline double gradient_energy(const Geometry& geo, const Field& w) {
  double s = 0.0;
  for (int i = 1; i < geo.cells; ++i) {
    const double d = (w[i] - w[i - 1]) / geo.h;
    s += geo.face_area[i] * d * d * geo.h;
  }
  return s;
}

}  // namespace detail

/// Energy estimate: max_t int u^{m+1} + int int |grad u^m|^2 against the data
/// terms int |grad g|^2 + int |d_t g|^{1+1/m} + int u0^{m+1}.
inline EstimateReport energy_estimate_report(const Trajectory& traj,
                                             const DirichletProblem& problem) {
  if (traj.levels() < 2) throw EmptyTrajectory("energy estimate needs a time-resolved run");
  const detail::Geometry geo = detail::geometry_of(problem.grid);
  const double m = problem.exponent.m;
  const int L = traj.levels();

  double sup_u_m1 = 0.0, grad_energy = 0.0;
  for (int k = 0; k < L; ++k) {
    Field up(geo.cells), w(geo.cells);
    for (int i = 0; i < geo.cells; ++i) {
      up[i] = std::pow(traj.fields[k][i], m + 1.0);
      w[i] = detail::upow(traj.fields[k][i], m);
    }
    sup_u_m1 = std::max(sup_u_m1, detail::cell_integral(geo, up));
    if (k > 0) grad_energy += detail::gradient_energy(geo, w) * (traj.times[k] - traj.times[k - 1]);
  }
  const double lhs = sup_u_m1 + grad_energy;

  // data terms: g sampled on the cell centers over the whole cylinder
  double g_grad = 0.0, g_dt = 0.0;
  if (problem.g) {
    for (int k = 1; k < L; ++k) {
      const double t = traj.times[k];
      const double dt = traj.times[k] - traj.times[k - 1];
      Field gk(geo.cells);
      for (int i = 0; i < geo.cells; ++i) gk[i] = problem.g(geo.x[i], t);
      g_grad += detail::gradient_energy(geo, gk) * dt;
      const double tm = (k + 1 < L) ? traj.times[k + 1] : t;
      const double tp = traj.times[k - 1];
      for (int i = 0; i < geo.cells; ++i) {
        const double d = (problem.g(geo.x[i], tm) - problem.g(geo.x[i], tp)) / (tm - tp);
        g_dt += std::pow(std::abs(d), 1.0 + 1.0 / m) * geo.volume[i] * dt;
      }
    }
  }
  Field u0p(geo.cells);
  for (int i = 0; i < geo.cells; ++i) u0p[i] = std::pow(problem.initial_u0[i], m + 1.0);
  const double rhs = g_grad + g_dt + detail::cell_integral(geo, u0p);

  return detail::finish_report("energy", lhs, rhs,
                               {{"m", m}, {"n", double(problem.exponent.n)}, {"T", problem.T}});
}

/// Local sup bound on the parabolic cylinder B_rho x [t0 - rho^2, t0]:
/// sup over the half cylinder vs (mean over the full cylinder)^{2/lambda} + 1.
inline EstimateReport local_sup_bound_report(const Trajectory& traj, const Exponent& e,
                                             const RadialGrid& grid, double rho, double t0) {
  const DerivedConstants dc = derive_constants(e);
  if (rho <= 0.0 || rho > grid.r_max || t0 - rho * rho < traj.times.front() ||
      t0 > traj.times.back())
    throw CylinderOutOfRange("cylinder B_rho x [t0-rho^2, t0] leaves the computed range");
  const detail::Geometry geo = detail::geometry_of(grid);

  double sup_half = 0.0, mean_num = 0.0, mean_den = 0.0;
  for (int k = 0; k < traj.levels(); ++k) {
    const double t = traj.times[k];
    if (t < t0 - rho * rho || t > t0) continue;
    const double dt = k > 0 ? traj.times[k] - traj.times[k - 1] : 0.0;
    const bool in_half = t >= t0 - 0.5 * rho * rho;
    for (int i = 0; i < geo.cells; ++i) {
      if (geo.x[i] > rho) break;
      mean_num += traj.fields[k][i] * geo.volume[i] * dt;
      mean_den += geo.volume[i] * dt;
      if (in_half && geo.x[i] <= 0.5 * rho) sup_half = std::max(sup_half, traj.fields[k][i]);
    }
  }
  if (mean_den == 0.0) throw CylinderOutOfRange("cylinder contains no stored samples");
  const double mean = mean_num / mean_den;
  const double rhs = std::pow(mean, 2.0 / dc.smoothing_lambda) + 1.0;
  return detail::finish_report("local_sup", sup_half, rhs,
                               {{"m", e.m}, {"n", double(e.n)}, {"rho", rho}, {"t0", t0}});
}

/// The three Cauchy estimates: L1 contraction, the smoothing decay exponent,
/// and the local L^{mq} space-time bound on the window S x (0, T].
inline std::vector<EstimateReport> cauchy_estimates_report(const Trajectory& traj,
                                                           const CauchyProblem& problem,
                                                           double S_radius, double q) {
  const double m = problem.exponent.m;
  const int n = problem.exponent.n;
  const DerivedConstants dc = derive_constants(problem.exponent);
  if (q >= 1.0 + 2.0 / (m * n))
    throw ExponentOutOfRange("q must satisfy q < 1 + 2/(mn)");
  const detail::Geometry geo = detail::geometry_of(problem.grid);
  const double mu_norm = detail::cell_integral(geo, problem.mu_approx);

  std::vector<EstimateReport> reports;

  // (1) mass never exceeds the initial trace norm
  double max_mass = 0.0;
  for (const auto& f : traj.fields) max_mass = std::max(max_mass, detail::cell_integral(geo, f));
  reports.push_back(detail::finish_report("cauchy_l1", max_mass, mu_norm,
                                          {{"m", m}, {"n", double(n)}}));

  // (2) decay slope of log sup u vs log t against -n/lambda
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (int k = 0; k < traj.levels(); ++k) {
    if (traj.times[k] <= 0.0) continue;
    const double sup = *std::max_element(traj.fields[k].begin(), traj.fields[k].end());
    if (sup <= 0.0) continue;
    const double lx = std::log(traj.times[k]), ly = std::log(sup);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt < 2) throw InsufficientData("need at least two positive-time levels for the decay fit");
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double target = -double(n) / dc.smoothing_lambda;
  EstimateReport decay;
  decay.name = "cauchy_smoothing";
  decay.lhs = slope;
  decay.rhs_without_constant = target;
  decay.realized_constant = slope / target;
  decay.satisfied_with = std::abs(slope - target);
  decay.metadata = {{"m", m}, {"n", double(n)}, {"levels", double(cnt)}};
  reports.push_back(decay);

  // (3) int_{S_T} u^{mq} vs ||mu||^{(2/lambda)(mq-1)+1} T^{1-(n/lambda)(mq-1)}
  double lhs3 = 0.0;
  for (int k = 1; k < traj.levels(); ++k) {
    const double dt = traj.times[k] - traj.times[k - 1];
    for (int i = 0; i < geo.cells; ++i) {
      if (geo.x[i] > S_radius) break;
      lhs3 += detail::upow(traj.fields[k][i], m * q) * geo.volume[i] * dt;
    }
  }
  const double T = traj.times.back();
  const double rhs3 = std::pow(mu_norm, 2.0 / dc.smoothing_lambda * (m * q - 1.0) + 1.0) *
                      std::pow(T, 1.0 - double(n) / dc.smoothing_lambda * (m * q - 1.0));
  reports.push_back(detail::finish_report(
      "cauchy_lmq", lhs3, rhs3, {{"m", m}, {"n", double(n)}, {"q", q}, {"S", S_radius}}));
  return reports;
}

/// Defect of the lifted-solution pairing: solve the same problem with data
/// (u0 + delta, g + delta^m) and integrate (u_d - u)(u_d^m - u^m) over the
/// cylinder; the bound is c (delta + delta^m) with the explicit
/// c = 2^{m+1}(M^m + M + 1)|U|.
inline EstimateReport oleinik_defect(const Trajectory& u, double delta,
                                     const DirichletProblem& problem, const SolverConfig& config) {
  if (delta <= 0.0 || delta >= 1.0)
    throw ExponentOutOfRange("oleinik_defect requires 0 < delta < 1");
  const double m = problem.exponent.m;
  DirichletProblem lifted = problem;
  const double dm = std::pow(delta, m);
  auto base_g = problem.g;
  lifted.g = [base_g, dm](double x, double t) { return (base_g ? base_g(x, t) : 0.0) + dm; };
  lifted.initial_u0 = problem.initial_u0;
  for (double& v : lifted.initial_u0) v += delta;
  const Trajectory ud = solve_dirichlet(lifted, config);
  if (ud.levels() != u.levels()) throw LengthMismatch("lifted run stored a different cadence");

  const detail::Geometry geo = detail::geometry_of(problem.grid);
  double pairing = 0.0, M = 0.0;
  for (int k = 1; k < u.levels(); ++k) {
    const double dt = u.times[k] - u.times[k - 1];
    for (int i = 0; i < geo.cells; ++i) {
      const double a = ud.fields[k][i], b = u.fields[k][i];
      pairing += (a - b) * (detail::upow(a, m) - detail::upow(b, m)) * geo.volume[i] * dt;
      M = std::max(M, std::max(a, b));
    }
  }
  const double cylinder = geo.domain_volume * (u.times.back() - u.times.front());
  const double stated_c = std::pow(2.0, m + 1.0) * (std::pow(M, m) + M + 1.0) * cylinder;
  EstimateReport r = detail::finish_report("oleinik", pairing, delta + dm,
                                           {{"m", m}, {"delta", delta}, {"M", M},
                                            {"stated_c", stated_c}});
  r.metadata["stated_bound_holds"] = pairing <= stated_c * (delta + dm) ? 1.0 : 0.0;
  return r;
}

/// Parabolic Sobolev embedding applied to w = u^m: int int w^{2 kappa} vs
/// (sup_t int w^2)^{kappa - 1} * (grad energy + int int w^2).
inline EstimateReport sobolev_report(const Trajectory& traj, const DirichletProblem& problem) {
  const detail::Geometry geo = detail::geometry_of(problem.grid);
  const DerivedConstants dc = derive_constants(problem.exponent);
  const double m = problem.exponent.m;
  const double kappa = dc.kappa_sobolev;

  double lhs = 0.0, sup_l2 = 0.0, grad = 0.0, l2_st = 0.0;
  for (int k = 0; k < traj.levels(); ++k) {
    Field w(geo.cells);
    for (int i = 0; i < geo.cells; ++i) w[i] = detail::upow(traj.fields[k][i], m);
    double l2 = 0.0;
    for (int i = 0; i < geo.cells; ++i) l2 += w[i] * w[i] * geo.volume[i];
    sup_l2 = std::max(sup_l2, l2);
    if (k == 0) continue;
    const double dt = traj.times[k] - traj.times[k - 1];
    for (int i = 0; i < geo.cells; ++i)
      lhs += std::pow(w[i], 2.0 * kappa) * geo.volume[i] * dt;
    grad += detail::gradient_energy(geo, w) * dt;
    l2_st += l2 * dt;
  }
  const double rhs = std::pow(sup_l2, kappa - 1.0) * (grad + l2_st);
  return detail::finish_report("sobolev", lhs, rhs,
                               {{"m", m}, {"n", double(problem.exponent.n)}, {"kappa", kappa}});
}

/// Caccioppoli inequality with the explicit constants 2 and 16 and the
/// quartic cutoff eta = ((1 - (r/R)^2)_+)^2.
inline EstimateReport caccioppoli_report(const Trajectory& traj, const DirichletProblem& problem,
                                         double R) {
  const detail::Geometry geo = detail::geometry_of(problem.grid);
  const double m = problem.exponent.m;
  auto eta = [R](double r) {
    const double s = 1.0 - (r / R) * (r / R);
    return s > 0.0 ? s * s : 0.0;
  };
  auto deta = [R](double r) {
    const double s = 1.0 - (r / R) * (r / R);
    return s > 0.0 ? -4.0 * s * r / (R * R) : 0.0;
  };

  double M = 1.0;
  for (const auto& f : traj.fields)
    for (double v : f) M = std::max(M, v);

  double lhs = 0.0, deta2_st = 0.0, eta2_space = 0.0;
  for (int i = 0; i < geo.cells; ++i) {
    const double e = eta(geo.x[i]);
    eta2_space += e * e * geo.volume[i];
  }
  for (int k = 1; k < traj.levels(); ++k) {
    const double dt = traj.times[k] - traj.times[k - 1];
    Field w(geo.cells);
    for (int i = 0; i < geo.cells; ++i) w[i] = detail::upow(traj.fields[k][i], m);
    for (int i = 1; i < geo.cells; ++i) {
      const double d = (w[i] - w[i - 1]) / geo.h;
      const double rf = 0.5 * (geo.x[i] + geo.x[i - 1]);  // face coordinate
      const double e = eta(rf);
      lhs += e * e * d * d * geo.face_area[i] * geo.h * dt;
    }
    for (int i = 0; i < geo.cells; ++i) {
      const double de = deta(geo.x[i]);
      deta2_st += de * de * geo.volume[i] * dt;
    }
  }
  const double rhs = 2.0 * std::pow(M, m + 1.0) * eta2_space +
                     16.0 * std::pow(M, 2.0 * m) * deta2_st;
  EstimateReport r = detail::finish_report("caccioppoli", lhs, rhs,
                                           {{"m", m}, {"R", R}, {"M", M}});
  r.metadata["explicit_bound_holds"] = lhs <= rhs ? 1.0 : 0.0;
  return r;
}

}  // namespace pmfde
