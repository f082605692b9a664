#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pmfde/errors.hpp"

namespace pmfde {

using Field = std::vector<double>;

inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Cell-centered radial mesh on [0, r_max]. Cell i spans the shell
/// [i*h, (i+1)*h]; volumes are exact shell measures so that the midpoint
/// sum reproduces integrals of radial functions over the ball.
/// For n = 1 the grid stands for the symmetric interval [-r_max, r_max]
/// with even reflection, hence cell volumes 2*h and zero flux through r = 0.
struct RadialGrid {
  int n = 1;
  double r_max = 1.0;
  int cells = 0;
  double h = 0.0;
  std::vector<double> cell_centers;
  std::vector<double> cell_volumes;

  double face_radius(int i) const { return i * h; }

  // area of the sphere |x| = r; the reflected 1D interval has two endpoints
  double face_area(int i) const {
    const double r = face_radius(i);
    if (n == 1) return 2.0;
    return n * unit_ball_volume(n) * std::pow(r, n - 1);
  }
};

struct IntervalGrid {
  double a = 0.0;
  double b = 1.0;
  int cells = 0;
  double spacing = 0.0;
  std::vector<double> cell_centers;

  double cell_volume() const { return spacing; }
};

inline RadialGrid make_radial(int n, double r_max, int cells) {
  if (n < 1) throw InvalidGrid("dimension must be >= 1");
  if (!(r_max > 0.0)) throw InvalidGrid("r_max must be positive");
  if (cells < 2) throw InvalidGrid("need at least 2 cells");
  RadialGrid g;
  g.n = n;
  g.r_max = r_max;
  g.cells = cells;
  g.h = r_max / cells;
  g.cell_centers.resize(cells);
  g.cell_volumes.resize(cells);
  const double omega = unit_ball_volume(n);
  for (int i = 0; i < cells; ++i) {
    g.cell_centers[i] = (i + 0.5) * g.h;
    if (n == 1) {
      g.cell_volumes[i] = 2.0 * g.h;
    } else {
      const double r0 = i * g.h, r1 = (i + 1) * g.h;
      g.cell_volumes[i] = omega * (std::pow(r1, n) - std::pow(r0, n));
    }
  }
  return g;
}

inline IntervalGrid make_interval(double a, double b, int cells) {
  if (!(a < b)) throw InvalidGrid("need a < b");
  if (cells < 2) throw InvalidGrid("need at least 2 cells");
  IntervalGrid g;
  g.a = a;
  g.b = b;
  g.cells = cells;
  g.spacing = (b - a) / cells;
  g.cell_centers.resize(cells);
  for (int i = 0; i < cells; ++i) g.cell_centers[i] = a + (i + 0.5) * g.spacing;
  return g;
}

inline double integrate(const RadialGrid& g, const Field& f) {
  if (static_cast<int>(f.size()) != g.cells)
    throw DimensionMismatch("field has " + std::to_string(f.size()) + " entries, grid has " +
                            std::to_string(g.cells) + " cells");
  double s = 0.0;
  for (int i = 0; i < g.cells; ++i) s += f[i] * g.cell_volumes[i];
  return s;
}

inline double integrate(const IntervalGrid& g, const Field& f) {
  if (static_cast<int>(f.size()) != g.cells)
    throw DimensionMismatch("field/grid size mismatch");
  double s = 0.0;
  for (double v : f) s += v;
  return s * g.spacing;
}

}  // namespace pmfde
