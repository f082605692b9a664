#pragma once

#include <cmath>

#include "pmfde/errors.hpp"
#include "pmfde/trajectory.hpp"

namespace pmfde {

/// Exponential-in-time mollification u*(x,t) = (1/sigma) int_0^t e^{(s-t)/sigma} u(x,s) ds,
/// integrated exactly against the piecewise-linear interpolant of the source.
struct MollifiedTrajectory {
  Trajectory source;
  double sigma = 0.0;
  std::vector<Field> values;
};

inline MollifiedTrajectory mollify(const Trajectory& traj, double sigma) {
  if (traj.levels() == 0) throw EmptyTrajectory("cannot mollify an empty trajectory");
  MollifiedTrajectory mt;
  mt.source = traj;
  mt.sigma = sigma;
  const int L = traj.levels();
  const int N = traj.cells();
  mt.values.assign(L, Field(N, 0.0));
  // per interval [t_k, t_k+1] the exact kernel integral of a linear segment
  // a + b (s - t_k) evaluated at t_{k+1} is a (1-E) + b (dt - sigma (1-E)),
  // then earlier history decays by E = e^{-dt/sigma}
  for (int j = 0; j < N; ++j) {
    double acc = 0.0;  // u* at level k, built forward in time
    for (int k = 1; k < L; ++k) {
      const double dt = traj.times[k] - traj.times[k - 1];
      const double E = std::exp(-dt / sigma);
      const double a = traj.fields[k - 1][j];
      const double b = (traj.fields[k][j] - a) / dt;
      acc = E * acc + a * (1.0 - E) + b * (dt - sigma * (1.0 - E));
      mt.values[k][j] = acc;
    }
  }
  // u* vanishes at the first level (empty integration range)
  return mt;
}

/// Max over interior time levels and all cells of
/// |centered-difference d_t u* - (u - u*)/sigma|.
inline double time_derivative_identity_defect(const MollifiedTrajectory& mt) {
  const int L = static_cast<int>(mt.values.size());
  if (L < 3) throw EmptyTrajectory("need at least 3 time levels");
  const int N = static_cast<int>(mt.values.front().size());
  double worst = 0.0;
  for (int k = 1; k + 1 < L; ++k) {
    const double dt2 = mt.source.times[k + 1] - mt.source.times[k - 1];
    for (int j = 0; j < N; ++j) {
      const double ddt = (mt.values[k + 1][j] - mt.values[k - 1][j]) / dt2;
      const double rhs = (mt.source.fields[k][j] - mt.values[k][j]) / mt.sigma;
      worst = std::max(worst, std::abs(ddt - rhs));
    }
  }
  return worst;
}

/// Discrete space-time L^p norm of a stack of fields, with uniform weight dt
/// per level and the grid volumes in space. p = inf is the max norm.
inline double trajectory_lp_norm(const std::vector<Field>& fields, const RadialGrid& g,
                                 double dt, double p) {
  if (std::isinf(p)) {
    double worst = 0.0;
    for (const auto& f : fields)
      for (double v : f) worst = std::max(worst, std::abs(v));
    return worst;
  }
  double s = 0.0;
  for (const auto& f : fields)
    for (int i = 0; i < g.cells; ++i) s += std::pow(std::abs(f[i]), p) * g.cell_volumes[i] * dt;
  return std::pow(s, 1.0 / p);
}

}  // namespace pmfde
