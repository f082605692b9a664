// pmfde command-line driver: every experiment is described by an INI-style
// config file and emits CSV; see README for the parameter catalogue.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pmfde/pmfde.hpp"

namespace {

using namespace pmfde;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string resolve_output(const RunConfig& rc) {
  const char* dir = std::getenv("PMFDE_OUTPUT_DIR");
  if (!dir || rc.output_path.empty() || rc.output_path.front() == '/') return rc.output_path;
  return std::string(dir) + "/" + rc.output_path;
}

Field bump_field(const std::vector<double>& centers, double radius, double amplitude) {
  Field f(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double s = 1.0 - (centers[i] / radius) * (centers[i] / radius);
    f[i] = s > 0.0 ? amplitude * s * s : 0.0;
  }
  return f;
}

DirichletProblem dirichlet_from_config(const RunConfig& rc) {
  DirichletProblem p;
  p.exponent = make_exponent(param_double(rc, "problem.m", 2.0, true),
                             static_cast<int>(param_int(rc, "problem.n", 1)));
  const int cells = static_cast<int>(param_int(rc, "grid.cells", 128));
  const double r_max = param_double(rc, "grid.r_max", 1.0);
  RadialGrid g = make_radial(p.exponent.n, r_max, cells);
  p.grid = g;
  p.T = param_double(rc, "time.T", 0.5);
  const double gb = param_double(rc, "data.g", 0.0);
  p.g = [gb](double, double) { return gb; };
  p.initial_u0 = bump_field(g.cell_centers, param_double(rc, "data.bump_radius", 0.5 * r_max),
                            param_double(rc, "data.amplitude", 1.0));
  return p;
}

CauchyProblem cauchy_from_config(const RunConfig& rc) {
  CauchyProblem p;
  p.exponent = make_exponent(param_double(rc, "problem.m", 2.0, true),
                             static_cast<int>(param_int(rc, "problem.n", 1)));
  const int cells = static_cast<int>(param_int(rc, "grid.cells", 256));
  const double r_max = param_double(rc, "grid.r_max", 3.0);
  p.grid = make_radial(p.exponent.n, r_max, cells);
  p.t_start = param_double(rc, "time.t_start", 0.5);
  p.T = param_double(rc, "time.T", 1.0);
  // initial data: Barenblatt at t_start scaled to the requested mass
  p.mass = param_double(rc, "data.mass", 1.0);
  BarenblattProfile b = normalize(p.exponent);
  p.mu_approx = sample(b, p.grid, p.t_start);
  for (double& v : p.mu_approx) v *= p.mass;
  return p;
}

SolverConfig solver_from_config(const RunConfig& rc) {
  SolverConfig c;
  c.dt = param_double(rc, "time.dt", 1e-2);
  c.newton_tol = param_double(rc, "solver.newton_tol", 1e-10);
  c.newton_max_iters = static_cast<int>(param_int(rc, "solver.newton_max_iters", 50));
  c.store_every = static_cast<int>(param_int(rc, "solver.store_every", 1));
  return c;
}

int cmd_barenblatt(const RunConfig& rc) {
  const Exponent e = make_exponent(param_double(rc, "problem.m", 2.0, true),
                                   static_cast<int>(param_int(rc, "problem.n", 1)));
  const double t = param_double(rc, "problem.t", 1.0);
  const int samples = static_cast<int>(param_int(rc, "problem.samples", 100));
  const double r_max = param_double(rc, "grid.r_max", 0.0);
  BarenblattProfile p = normalize(e);
  const double R = r_max > 0.0 ? r_max
                   : e.m > 1.0 ? 1.1 * support_radius(p, t)
                               : 10.0 * std::pow(t, p.constants.barenblatt_lambda / e.n);
  std::vector<CsvRow> rows;
  for (int i = 0; i < samples; ++i) {
    const double r = (i + 0.5) * R / samples;
    rows.push_back({r, evaluate(p, r, t)});
  }
  emit_csv({"r", "u"}, rows, resolve_output(rc));
  return 0;
}

int cmd_solve_dirichlet(const RunConfig& rc) {
  DirichletProblem p = dirichlet_from_config(rc);
  const Trajectory traj = solve_dirichlet(p, solver_from_config(rc));
  const RadialGrid& g = std::get<RadialGrid>(p.grid);
  std::vector<CsvRow> rows;
  for (int k = 0; k < traj.levels(); ++k) {
    const double sup = *std::max_element(traj.fields[k].begin(), traj.fields[k].end());
    rows.push_back({traj.times[k], integrate(g, traj.fields[k]), sup,
                    static_cast<long long>(traj.newton_iters[k]), traj.residual_norms[k]});
  }
  emit_csv({"t", "mass", "sup", "newton_iters", "residual"}, rows, resolve_output(rc));
  return 0;
}

int cmd_solve_cauchy(const RunConfig& rc, bool assert_mode) {
  CauchyProblem p = cauchy_from_config(rc);
  const Trajectory traj = solve_cauchy(p, solver_from_config(rc));
  std::vector<CsvRow> rows;
  bool mass_ok = true;
  double prev_mass = std::numeric_limits<double>::infinity();
  const double mu_norm = integrate(p.grid, p.mu_approx);
  for (int k = 0; k < traj.levels(); ++k) {
    const double mass = integrate(p.grid, traj.fields[k]);
    const double sup = *std::max_element(traj.fields[k].begin(), traj.fields[k].end());
    if (mass > mu_norm * (1.0 + 1e-8) || mass > prev_mass * (1.0 + 1e-12)) mass_ok = false;
    prev_mass = mass;
    rows.push_back({traj.times[k], mass, sup,
                    static_cast<long long>(traj.truncation_warning ? 1 : 0)});
  }
  emit_csv({"t", "mass", "sup", "truncation_warning"}, rows, resolve_output(rc));
  return assert_mode && !mass_ok ? 3 : 0;
}

int cmd_sweep(const RunConfig& rc, bool cauchy, bool assert_mode) {
  SweepSpec spec;
  spec.target_m = param_double(rc, "problem.m", 2.0, true);
  spec.deltas = param_list(rc, "sweep.deltas", {0.2, -0.2, 0.1, -0.1, 0.05, -0.05});
  spec.q = param_double(rc, "sweep.q", 2.0);
  spec.s = param_double(rc, "sweep.s", 2.0);
  spec.S_radius = param_double(rc, "sweep.window", 0.0);
  spec.config = solver_from_config(rc);
  spec.resolution_tag = param_str(rc, "sweep.resolution_tag", "base");
  SweepResult result;
  if (cauchy) {
    spec.problem_template = cauchy_from_config(rc);
    result = run_cauchy_sweep(spec);
  } else {
    spec.problem_template = dirichlet_from_config(rc);
    result = run_dirichlet_sweep(spec);
  }
  std::vector<CsvRow> rows;
  for (const auto& r : result.rows)
    rows.push_back({r.delta, r.m_i, spec.q, r.error_lq, r.error_power_ls, r.weak_defect_max,
                    spec.resolution_tag});
  emit_csv({"delta", "m_i", "q", "error_Lq", "error_power_Ls", "weak_defect_max",
            "resolution_tag"},
           rows, resolve_output(rc));
  if (assert_mode) {
    // rows are sorted by |delta|; per sign, errors must grow with |delta|
    for (double sign : {1.0, -1.0}) {
      double prev = 0.0;
      for (const auto& r : result.rows) {
        if (r.failed) return 3;
        if (r.delta * sign <= 0.0) continue;
        if (r.error_lq <= prev) return 3;
        prev = r.error_lq;
      }
    }
  }
  return 0;
}

int cmd_check_estimates(const RunConfig& rc, bool assert_mode) {
  DirichletProblem p = dirichlet_from_config(rc);
  SolverConfig cfg = solver_from_config(rc);
  const Trajectory traj = solve_dirichlet(p, cfg);
  const RadialGrid& grid = std::get<RadialGrid>(p.grid);

  std::vector<EstimateReport> reports;
  reports.push_back(energy_estimate_report(traj, p));
  reports.push_back(sobolev_report(traj, p));
  reports.push_back(caccioppoli_report(traj, p, grid.r_max));
  reports.push_back(oleinik_defect(traj, param_double(rc, "estimates.delta", 0.1), p, cfg));
  const double rho = param_double(rc, "estimates.rho", 0.4 * grid.r_max);
  const double t0 = param_double(rc, "estimates.t0", p.T);
  reports.push_back(local_sup_bound_report(traj, p.exponent, grid, rho, t0));

  std::vector<CsvRow> rows;
  bool ok = true;
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.metadata) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s=%.17g ", k.c_str(), v);
      params += buf;
    }
    rows.push_back({r.name, r.lhs, r.rhs_without_constant, r.realized_constant, params});
    auto it = r.metadata.find("explicit_bound_holds");
    if (it != r.metadata.end() && it->second != 1.0) ok = false;
    it = r.metadata.find("stated_bound_holds");
    if (it != r.metadata.end() && it->second != 1.0) ok = false;
  }
  emit_csv({"name", "lhs", "rhs", "realized_constant", "parameters"}, rows, resolve_output(rc));
  return assert_mode && !ok ? 3 : 0;
}

int cmd_check_lemmas(const RunConfig& rc, bool assert_mode) {
  const long long trials = param_int(rc, "fuzz.trials", 100000);
  const auto seed = static_cast<unsigned long long>(rc.seed);
  const FuzzResult results[] = {
      fuzz_power_gap(trials, seed),
      fuzz_monotonicity(trials, seed + 1),
      fuzz_power_difference(trials, seed + 2),
  };
  std::vector<CsvRow> rows;
  long long violations = 0;
  for (const auto& r : results) {
    rows.push_back({r.name, r.trials, r.violations, r.worst_realized});
    violations += r.violations;
    std::cout << r.name << ": " << r.violations << " violations in " << r.trials
              << " trials, worst realized " << r.worst_realized << "\n";
  }
  emit_csv({"name", "trials", "violations", "worst_realized"}, rows, resolve_output(rc));
  return assert_mode && violations != 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"porous-medium / fast-diffusion numerical laboratory"};
  std::string config_path;
  bool assert_mode = false;
  bool print_config = false;
  app.add_option("config", config_path, "INI-style run configuration")->required();
  app.add_flag("--assert", assert_mode, "exit 3 when an acceptance threshold fails");
  app.add_flag("--print-config", print_config, "echo the parsed config and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    const pmfde::RunConfig rc = pmfde::parse_config(read_file(config_path));
    if (print_config) {
      std::cout << pmfde::serialize_config(rc);
      return 0;
    }
    if (rc.command == "barenblatt") return cmd_barenblatt(rc);
    if (rc.command == "solve-dirichlet") return cmd_solve_dirichlet(rc);
    if (rc.command == "solve-cauchy") return cmd_solve_cauchy(rc, assert_mode);
    if (rc.command == "sweep-dirichlet") return cmd_sweep(rc, false, assert_mode);
    if (rc.command == "sweep-cauchy") return cmd_sweep(rc, true, assert_mode);
    if (rc.command == "check-estimates") return cmd_check_estimates(rc, assert_mode);
    if (rc.command == "check-lemmas") return cmd_check_lemmas(rc, assert_mode);
    std::cerr << "unreachable command\n";
    return 1;
  } catch (const pmfde::ConfigInvalid& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const pmfde::IoError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const pmfde::Error& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  }
}
