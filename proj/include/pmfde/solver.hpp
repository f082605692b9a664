#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "pmfde/errors.hpp"
#include "pmfde/params.hpp"
#include "pmfde/trajectory.hpp"

namespace pmfde {

struct SolverConfig {
  double dt = 1e-2;
  double newton_tol = 1e-10;  // absolute residual in scaled l2 norm
  int newton_max_iters = 50;
  double jacobian_floor = 1e-12;  // caps the singular derivative for m < 1
  double positivity_clip_tol = 1e-12;
  double truncation_tol = 1e-10;  // Cauchy: allowed boundary-cell value
  int store_every = 1;            // estimate runs need every step
};

/// Initial-boundary value problem on a bounded domain; the boundary data g
/// prescribes u^m on the boundary, per the weak formulation. g is a function
/// on the closure of the domain so that the energy estimate can quadrature
/// its gradient; the solver itself only reads boundary values.
struct DirichletProblem {
  Exponent exponent;
  std::variant<IntervalGrid, RadialGrid> grid;
  double T = 1.0;
  std::function<double(double, double)> g;  // (x or r, t) -> u^m value
  Field initial_u0;
};

/// Cauchy problem with finite-mass data, truncated to a ball with zero
/// Dirichlet data at r_max.
struct CauchyProblem {
  Exponent exponent;
  double mass = 1.0;
  Field mu_approx;  // nonnegative, integrates to mass
  RadialGrid grid;
  double T = 1.0;
  double t_start = 0.0;
};

namespace detail {

// 1D finite-volume mesh description shared by interval and radial problems.
// faces 0..cells; A[i] face areas with A=0 encoding a no-flux face.
struct Mesh1D {
  int cells = 0;
  double h = 0.0;
  std::vector<double> face_area;
  std::vector<double> cell_volume;
  bool left_dirichlet = false;   // interval grids only; radial axis is no-flux
  bool right_dirichlet = true;
  double left_x = 0.0, right_x = 0.0;  // boundary coordinates for g
};

inline Mesh1D make_mesh(const IntervalGrid& g) {
  Mesh1D m;
  m.cells = g.cells;
  m.h = g.spacing;
  m.face_area.assign(g.cells + 1, 1.0);
  m.cell_volume.assign(g.cells, g.spacing);
  m.left_dirichlet = true;
  m.right_dirichlet = true;
  m.left_x = g.a;
  m.right_x = g.b;
  return m;
}

inline Mesh1D make_mesh(const RadialGrid& g) {
  Mesh1D m;
  m.cells = g.cells;
  m.h = g.h;
  m.face_area.resize(g.cells + 1);
  for (int i = 0; i <= g.cells; ++i) m.face_area[i] = g.face_area(i);
  m.face_area[0] = 0.0;  // symmetry axis
  m.cell_volume = g.cell_volumes;
  m.left_dirichlet = false;
  m.right_dirichlet = true;
  m.left_x = 0.0;
  m.right_x = g.r_max;
  return m;
}

inline void thomas_solve(std::vector<double>& sub, std::vector<double>& diag,
                         std::vector<double>& sup, std::vector<double>& rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

inline double upow(double u, double m) { return u <= 0.0 ? 0.0 : std::pow(u, m); }

// One backward-Euler solve of u_new - dt L(u_new^m) = u_old by Newton
// iteration on the tridiagonal system. gl/gr are boundary values of u^m at
// the new time level. Returns Newton iteration count, final residual in
// *residual. Throws NewtonDiverged on iteration cap.
inline int backward_euler_solve(const Mesh1D& mesh, double m, const Field& u_old, double dt,
                                double gl, double gr, const SolverConfig& cfg, Field& u,
                                double* residual) {
  const int N = mesh.cells;
  const double h = mesh.h;
  std::vector<double> w(N), res(N), sub(N), diag(N), sup(N);

  auto residual_norm = [&](const Field& v, std::vector<double>& out) {
    for (int i = 0; i < N; ++i) w[i] = upow(v[i], m);
    double r = 0.0;
    for (int i = 0; i < N; ++i) {
      double flux_out, flux_in;
      if (i + 1 == N)
        flux_out = mesh.right_dirichlet ? mesh.face_area[N] * (gr - w[N - 1]) / (0.5 * h) : 0.0;
      else
        flux_out = mesh.face_area[i + 1] * (w[i + 1] - w[i]) / h;
      if (i == 0)
        flux_in = mesh.left_dirichlet ? -mesh.face_area[0] * (gl - w[0]) / (0.5 * h) : 0.0;
      else
        flux_in = mesh.face_area[i] * (w[i] - w[i - 1]) / h;
      out[i] = v[i] - u_old[i] - dt * (flux_out - flux_in) / mesh.cell_volume[i];
      r += out[i] * out[i];
    }
    return std::sqrt(r / N);
  };

  u = u_old;
  double r2 = residual_norm(u, res);
  int it = 0;
  for (; it < cfg.newton_max_iters; ++it) {
    if (r2 <= cfg.newton_tol) break;

    for (int i = 0; i < N; ++i) {
      const double dphi = m * std::pow(std::max(u[i], cfg.jacobian_floor), m - 1.0);
      double aout, ain;
      if (i + 1 == N)
        aout = mesh.right_dirichlet ? 2.0 * mesh.face_area[N] : 0.0;  // half-cell face
      else
        aout = mesh.face_area[i + 1];
      if (i == 0)
        ain = mesh.left_dirichlet ? 2.0 * mesh.face_area[0] : 0.0;
      else
        ain = mesh.face_area[i];
      diag[i] = 1.0 + dt * (aout + ain) / (mesh.cell_volume[i] * h) * dphi;
      sub[i] = 0.0;
      sup[i] = 0.0;
      if (i > 0) {
        const double dphi_l = m * std::pow(std::max(u[i - 1], cfg.jacobian_floor), m - 1.0);
        sub[i] = -dt * mesh.face_area[i] / (mesh.cell_volume[i] * h) * dphi_l;
      }
      if (i + 1 < N) {
        const double dphi_r = m * std::pow(std::max(u[i + 1], cfg.jacobian_floor), m - 1.0);
        sup[i] = -dt * mesh.face_area[i + 1] / (mesh.cell_volume[i] * h) * dphi_r;
      }
    }
    thomas_solve(sub, diag, sup, res);
    // damped, projected update: the singular m < 1 diffusivity makes the
    // full step oscillate on rough data; backtrack until the residual drops
    std::vector<double> step = res, trial_res(N);
    Field trial(N);
    double alpha = 1.0;
    for (int bt = 0; bt < 12; ++bt) {
      for (int i = 0; i < N; ++i) trial[i] = std::max(u[i] - alpha * step[i], 0.0);
      const double rt = residual_norm(trial, trial_res);
      if (rt < r2 || bt == 11) {
        u = trial;
        res = trial_res;
        r2 = rt;
        break;
      }
      alpha *= 0.5;
    }
  }
  if (r2 > cfg.newton_tol)
    throw NewtonDiverged("Newton did not reach tol " + std::to_string(cfg.newton_tol) +
                         " in " + std::to_string(cfg.newton_max_iters) +
                         " iterations (residual " + std::to_string(r2) + ")");
  *residual = r2;
  return it;
}

inline void clip_negatives(Field& u, const SolverConfig& cfg, int* clip_count) {
  for (double& v : u) {
    if (v < 0.0) {
      if (v < -cfg.positivity_clip_tol)
        throw NegativeOvershoot("field entry " + std::to_string(v) +
                                " below -positivity_clip_tol");
      v = 0.0;
      ++*clip_count;
    }
  }
}

// Advance one nominal step, halving dt up to 4 times on Newton divergence
// (degenerate fronts occasionally produce a stiff step).
inline void advance(const Mesh1D& mesh, double m, Field& u, double t_old, double dt_nominal,
                    const std::function<double(double, double)>& g, const SolverConfig& cfg,
                    int* iters, double* residual, int* clip_count) {
  int halvings = 0;
  double dt = dt_nominal;
  double t = t_old;
  const double t_end = t_old + dt_nominal;
  *iters = 0;
  while (t < t_end - 1e-14 * std::max(1.0, t_end)) {
    const double t_new = std::min(t + dt, t_end);
    const double gl = mesh.left_dirichlet && g ? g(mesh.left_x, t_new) : 0.0;
    const double gr = mesh.right_dirichlet && g ? g(mesh.right_x, t_new) : 0.0;
    Field u_new;
    try {
      *iters += backward_euler_solve(mesh, m, u, t_new - t, gl, gr, cfg, u_new, residual);
    } catch (const NewtonDiverged&) {
      if (++halvings > 4) throw;
      dt *= 0.5;
      continue;
    }
    clip_negatives(u_new, cfg, clip_count);
    u = std::move(u_new);
    t = t_new;
  }
}

}  // namespace detail

/// One backward-Euler step of the given problem; exposed mostly for tests.
template <typename Problem>
Field step(const Field& u_old, double t_old, const Problem& problem, const SolverConfig& config) {
  detail::Mesh1D mesh;
  std::function<double(double, double)> g;
  if constexpr (std::is_same_v<Problem, DirichletProblem>) {
    std::visit([&](const auto& gr) { mesh = detail::make_mesh(gr); }, problem.grid);
    g = problem.g;
  } else {
    mesh = detail::make_mesh(problem.grid);
    g = nullptr;
  }
  Field u = u_old;
  int iters = 0, clips = 0;
  double res = 0.0;
  detail::advance(mesh, problem.exponent.m, u, t_old, config.dt, g, config, &iters, &res, &clips);
  return u;
}

inline Trajectory solve_dirichlet(const DirichletProblem& problem, const SolverConfig& config) {
  detail::Mesh1D mesh;
  std::visit([&](const auto& g) { mesh = detail::make_mesh(g); }, problem.grid);
  const double m = problem.exponent.m;
  Trajectory traj;
  Field u = problem.initial_u0;
  traj.times.push_back(0.0);
  traj.fields.push_back(u);
  traj.newton_iters.push_back(0);
  traj.residual_norms.push_back(0.0);
  const int steps = static_cast<int>(std::llround(problem.T / config.dt));
  for (int s = 1; s <= steps; ++s) {
    const double t_old = (s - 1) * config.dt;
    int iters = 0;
    double res = 0.0;
    try {
      detail::advance(mesh, m, u, t_old, config.dt, problem.g, config, &iters, &res,
                      &traj.clip_count);
    } catch (const Error& e) {
      throw NewtonDiverged(std::string(e.what()) + " at t=" + std::to_string(t_old));
    }
    if (s % config.store_every == 0 || s == steps) {
      traj.times.push_back(s * config.dt);
      traj.fields.push_back(u);
      traj.newton_iters.push_back(iters);
      traj.residual_norms.push_back(res);
    }
  }
  return traj;
}

inline Trajectory solve_cauchy(const CauchyProblem& problem, const SolverConfig& config) {
  detail::Mesh1D mesh = detail::make_mesh(problem.grid);
  const double m = problem.exponent.m;
  Trajectory traj;
  Field u = problem.mu_approx;
  traj.times.push_back(problem.t_start);
  traj.fields.push_back(u);
  traj.newton_iters.push_back(0);
  traj.residual_norms.push_back(0.0);
  const int steps = static_cast<int>(std::llround((problem.T - problem.t_start) / config.dt));
  for (int s = 1; s <= steps; ++s) {
    const double t_old = problem.t_start + (s - 1) * config.dt;
    int iters = 0;
    double res = 0.0;
    detail::advance(mesh, m, u, t_old, config.dt, nullptr, config, &iters, &res,
                    &traj.clip_count);
    if (u.back() > config.truncation_tol) {
      traj.truncation_warning = true;
      if (m < 1.0 && u.back() > 1e3 * config.truncation_tol)
        throw TruncationViolation("fast-diffusion tail reached the boundary: u(r_max)=" +
                                  std::to_string(u.back()));
    }
    if (s % config.store_every == 0 || s == steps) {
      traj.times.push_back(problem.t_start + s * config.dt);
      traj.fields.push_back(u);
      traj.newton_iters.push_back(iters);
      traj.residual_norms.push_back(res);
    }
  }
  return traj;
}

}  // namespace pmfde
