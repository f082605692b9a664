#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pmfde/barenblatt.hpp"
#include "pmfde/harness.hpp"

using namespace pmfde;
using Catch::Matchers::WithinAbs;

namespace {

SweepSpec small_dirichlet_spec() {
  SweepSpec spec;
  spec.target_m = 2.0;
  spec.deltas = {0.0, 0.2, -0.2, 0.1, -0.1, 0.05, -0.05};
  DirichletProblem p;
  p.exponent = make_exponent(2.0, 1);
  RadialGrid g = make_radial(1, 1.0, 64);
  p.grid = g;
  p.T = 0.25;
  p.g = [](double, double) { return 0.0; };
  p.initial_u0.resize(g.cells);
  for (int i = 0; i < g.cells; ++i) {
    const double s = 1.0 - std::pow(g.cell_centers[i] / 0.5, 2);
    p.initial_u0[i] = s > 0.0 ? s * s : 0.0;
  }
  spec.problem_template = p;
  spec.q = 2.0;
  spec.s = 2.0;
  spec.config.dt = 1.0 / 128.0;
  return spec;
}

}  // namespace

TEST_CASE("rate fitting on synthetic log-linear data", "[harness]") {
  SweepResult r;
  for (double d : {0.2, 0.1, 0.05, 0.025}) {
    SweepRow row;
    row.delta = d;
    row.error_lq = 2.0 * std::pow(d, 0.5);
    r.rows.push_back(row);
  }
  const auto [order, constant] = fit_rate(r, 0.5);
  CHECK_THAT(order, WithinAbs(0.5, 1e-12));
  CHECK_THAT(constant, WithinAbs(2.0, 1e-12));

  SweepResult single;
  SweepRow row;
  row.delta = 0.1;
  row.error_lq = 0.2;
  single.rows.push_back(row);
  CHECK_THROWS_AS(fit_rate(single, 0.5), InsufficientData);
}

TEST_CASE("dirichlet sweep: control, monotonicity, determinism", "[harness]") {
  const SweepSpec spec = small_dirichlet_spec();
  const SweepResult result = run_dirichlet_sweep(spec);
  REQUIRE(result.rows.size() == spec.deltas.size());

  // rows sorted by |delta|; first is the control
  CHECK(result.rows.front().delta == 0.0);
  CHECK(result.rows.front().error_lq <= 1e-9);

  // errors and weak defects grow with |delta| for each sign
  for (double sign : {1.0, -1.0}) {
    double prev_err = 0.0, prev_weak = 0.0;
    for (const auto& row : result.rows) {  // sorted by |delta| ascending
      if (row.delta * sign <= 0.0) continue;
      CHECK(row.error_lq > prev_err);
      CHECK(row.weak_defect_max > prev_weak);
      prev_err = row.error_lq;
      prev_weak = row.weak_defect_max;
    }
  }

  const SweepResult again = run_dirichlet_sweep(spec);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    CHECK(result.rows[i].error_lq == again.rows[i].error_lq);
    CHECK(result.rows[i].error_power_ls == again.rows[i].error_power_ls);
    CHECK(result.rows[i].weak_defect_max == again.rows[i].weak_defect_max);
  }
}

TEST_CASE("sweep norm preconditions", "[harness]") {
  SweepSpec spec = small_dirichlet_spec();
  spec.q = 3.5;  // >= 1 + m
  CHECK_THROWS_AS(run_dirichlet_sweep(spec), ExponentOutOfRange);
  spec = small_dirichlet_spec();
  spec.s = 10.0;
  CHECK_THROWS_AS(run_dirichlet_sweep(spec), ExponentOutOfRange);
}

TEST_CASE("cauchy sweep with a closed-form start", "[harness]") {
  const BarenblattProfile b = normalize(make_exponent(2.0, 1));
  SweepSpec spec;
  spec.target_m = 2.0;
  spec.deltas = {0.0, 0.1, -0.1, 0.05};
  CauchyProblem p;
  p.exponent = make_exponent(2.0, 1);
  p.grid = make_radial(1, 2.5, 128);
  p.t_start = 0.5;
  p.T = 1.0;
  p.mu_approx = sample(b, p.grid, 0.5);
  p.mass = integrate(p.grid, p.mu_approx);
  spec.problem_template = p;
  spec.q = 2.0;
  spec.s = 1.4;
  spec.S_radius = 2.0;
  spec.config.dt = 1.0 / 128.0;
  const SweepResult result = run_cauchy_sweep(spec);
  CHECK(result.rows.front().delta == 0.0);
  CHECK(result.rows.front().error_lq <= 1e-9);
  for (const auto& row : result.rows) CHECK_FALSE(row.failed);
  CHECK(result.rows.back().error_lq > result.rows[1].error_lq);

  spec.S_radius = 5.0;
  CHECK_THROWS_AS(run_cauchy_sweep(spec), CylinderOutOfRange);
  spec.S_radius = 2.0;
  spec.q = 4.0;
  CHECK_THROWS_AS(run_cauchy_sweep(spec), ExponentOutOfRange);
}

TEST_CASE("subcritical perturbations are rejected up front", "[harness]") {
  SweepSpec spec = small_dirichlet_spec();
  spec.deltas = {0.1, -1.99};  // m_i = 0.01 > m_c(1) = 0, fine for n = 1...
  DirichletProblem p = std::get<DirichletProblem>(spec.problem_template);
  p.exponent = make_exponent(2.0, 3);
  p.grid = make_radial(3, 1.0, 64);
  p.initial_u0.assign(64, 0.5);
  spec.problem_template = p;
  CHECK_THROWS_AS(run_dirichlet_sweep(spec), SubcriticalExponent);  // 0.01 <= 1/3 in n = 3
}
