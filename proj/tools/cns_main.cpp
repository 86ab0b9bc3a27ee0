// Command-line front end: validation, the two solvers, the verification
// ledger and the scaling check, all driven by one JSON config.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cns/biot_savart.hpp"
#include "cns/condition_a.hpp"
#include "cns/diagnostics.hpp"
#include "cns/field_io.hpp"
#include "cns/imex.hpp"
#include "cns/measures.hpp"
#include "cns/norms.hpp"
#include "cns/picard.hpp"
#include "cns/quadrature.hpp"
#include "cns/run_config.hpp"
#include "cns/spectral.hpp"

namespace {

using namespace cns;

void print_report(const ConditionReport& rep) {
  for (const auto& it : rep.items)
    std::printf("  %-28s %s  margin % .3e\n", it.name.c_str(), it.pass ? "PASS" : "FAIL",
                it.margin);
  std::printf("admissible: %s\n", rep.admissible ? "yes" : "no");
}

nlohmann::json report_json(const ConditionReport& rep) {
  nlohmann::json j;
  j["admissible"] = rep.admissible;
  j["items"] = nlohmann::json::array();
  for (const auto& it : rep.items)
    j["items"].push_back({{"name", it.name}, {"pass", it.pass}, {"margin", it.margin}});
  return j;
}

nlohmann::json budget_json(const ContractionBudget& b) {
  return {{"C112", b.c112},     {"C113", b.c113},   {"C223", b.c223},
          {"C212", b.c212},     {"C333", b.c333},   {"alpha_lin", b.alpha_lin},
          {"K1", b.k1},         {"K2", b.k2},       {"eps_max", b.eps_max},
          {"finite", b.finite}};
}

nlohmann::json ledger_json_entries(const Ledger& led) {
  return nlohmann::json::parse(ledger_to_json(led));
}

void print_ledger(const Ledger& led) {
  for (const auto& e : led.entries)
    std::printf("  %-24s %-7s bound % .6e  measured % .6e  %s\n", e.name.c_str(),
                e.status.c_str(), e.bound, e.measured, e.note.c_str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

VectorField config_potential(const RunConfig& cfg, bool* present) {
  *present = cfg.potential.present();
  if (!*present) return zero_vector_field(cfg.grid);
  return potential_gradient(cfg.potential, cfg.grid);
}

double field_sup_magnitude(const VectorField& v) {
  return std::sqrt((v.x.square() + v.y.square()).maxCoeff());
}

int mollification_of(const RunConfig& cfg) {
  return cfg.picard.mollification > 0 ? cfg.picard.mollification : mollification_level(cfg.grid);
}

OracleState oracle_initial(const RunConfig& cfg, int j) {
  OracleState st;
  st.grid = cfg.grid;
  st.t = 0.0;
  st.n = mollify(cfg.n0, cfg.grid, j);
  st.c = mollify(cfg.c0, cfg.grid, j);
  st.zeta = mollify(cfg.zeta0, cfg.grid, j);
  return st;
}

std::vector<std::string> dump_run(const std::string& dir, const SeriesView& sv) {
  std::vector<std::string> files;
  char base[64];
  for (std::size_t k = 0; k < sv.times.size(); ++k)
    for (auto [tag, f] : {std::pair{"n", sv.n[k]}, {"c", sv.c[k]}, {"zeta", sv.zeta[k]}}) {
      std::snprintf(base, sizeof base, "%s/node_%03zu_%s", dir.c_str(), k, tag);
      dump_field(base, *f, sv.grid, sv.times[k], tag);
      files.push_back(std::string(base) + ".f64");
      files.push_back(std::string(base) + ".json");
    }
  return files;
}

// The ledger shared by simulate / picard / verify: conservation, signs, the
// maximum principle and the vorticity growth budgets.
Ledger run_ledger(const SeriesView& sv, const RunConfig& cfg, double grad_phi_inf) {
  Ledger led;
  led.add(check_mass_conservation(sv));
  led.add(check_nonnegativity(sv));
  led.add(check_max_principle(sv));
  const double c0_sup = sv.c.empty() ? 0.0 : linf_norm(*sv.c.front());
  led.add(check_vorticity_budget(sv, 4.0, c0_sup, grad_phi_inf));
  led.add(check_vorticity_budget(sv, 1.5, c0_sup, grad_phi_inf));
  return led;
}

ScalarField gaussian_test_function(const Grid& g) {
  ScalarField psi = zero_field(g);
  for (int i = 0; i < g.size; ++i)
    for (int j = 0; j < g.size; ++j) {
      const double x = g.coord(i), y = g.coord(j);
      psi(i, j) = std::exp(-0.5 * (x * x + y * y));
    }
  return psi;
}

int cmd_validate(const IndexSet& idx, const std::string& json_path, int sweep) {
  if (sweep > 0) {
    // Coarse sweep over (1/p1, 1/p2, 1/p3) with the scaling equalities
    // pinning the alphas; prints the admissible corner of the region.
    int hits = 0, total = 0;
    for (int a = 1; a <= sweep; ++a)
      for (int b = 0; b <= sweep; ++b)
        for (int c = 1; c <= sweep; ++c) {
          IndexSet s;
          const double q1 = 0.5 * a / sweep;            // p1 >= 2
          const double q2 = 0.5 * b / (sweep + 1);      // p2 > 2
          const double q3 = 0.5 + 0.25 * c / sweep;     // p3 in (4/3, 2]
          s.p1 = 1 / q1;
          s.p2 = q2 == 0 ? std::numeric_limits<double>::infinity() : 1 / q2;
          s.p3 = 1 / q3;
          s.alpha1 = 1 - q1;
          s.alpha2 = 0.5 - q2;
          s.alpha3 = 1 - q3;
          ++total;
          if (validate_indices(s).admissible) {
            ++hits;
            std::printf("  p=(%.6g, %.6g, %.6g) alpha=(%.6g, %.6g, %.6g)\n", s.p1, s.p2, s.p3,
                        s.alpha1, s.alpha2, s.alpha3);
          }
        }
    std::printf("admissible: %d of %d sampled\n", hits, total);
    return 0;
  }
  const ConditionReport rep = validate_indices(idx);
  print_report(rep);
  if (!json_path.empty()) {
    nlohmann::json j = report_json(rep);
    const ContractionBudget bud = contraction_budget(idx, 0.0);
    if (rep.admissible) j["budget"] = budget_json(bud);
    write_text(json_path, j.dump(2));
  }
  return rep.admissible ? 0 : 1;
}

int cmd_simulate(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  bool has_phi = false;
  const VectorField gp = config_potential(cfg, &has_phi);
  const int j = mollification_of(cfg);
  const OracleState init = oracle_initial(cfg, j);
  const std::vector<double> snaps =
      graded_times(cfg.horizon, cfg.picard.nodes, cfg.picard.grading);
  const OracleRun run = run_oracle(init, cfg.horizon, cfg.imex_dt, snaps,
                                   has_phi ? &gp : nullptr, cfg.output_dir,
                                   std::max(1, int(std::lround(cfg.horizon / cfg.imex_dt)) / 4));
  const SeriesView sv = make_series(run, &init);
  Ledger led = run_ledger(sv, cfg, has_phi ? field_sup_magnitude(gp) : 0.0);
  std::vector<std::string> files = dump_run(cfg.output_dir, sv);
  write_text(cfg.output_dir + "/ledger.json", ledger_to_json(led));
  write_text(cfg.output_dir + "/ledger.csv", ledger_to_csv(led));
  files.push_back(cfg.output_dir + "/ledger.json");
  files.push_back(cfg.output_dir + "/ledger.csv");
  write_manifest(cfg.output_dir, cfg, files);
  std::printf("steps %d  snapshots %zu  mollification %d\n", run.steps, run.snapshots.size(), j);
  print_ledger(led);
  return led.all_pass() ? 0 : 1;
}

int cmd_picard(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  bool has_phi = false;
  const VectorField gp = config_potential(cfg, &has_phi);
  std::ofstream csv(cfg.output_dir + "/iterations.csv");
  const MildSolution sol =
      solve_picard(cfg.n0, cfg.c0, cfg.zeta0, cfg.grid, cfg.indices, cfg.picard,
                   has_phi ? &gp : nullptr, &csv);
  csv.close();

  nlohmann::json rep;
  rep["status"] = sol.status;
  rep["converged"] = sol.converged;
  rep["iterations"] = sol.iterations;
  rep["halvings"] = sol.halvings;
  rep["horizon_used"] = sol.horizon_used;
  rep["mollification"] = sol.mollification;
  rep["seed_norm"] = sol.seed_norm;
  rep["increments"] = sol.increments;
  rep["ratios"] = sol.ratios;
  rep["iterate_norms"] = sol.iterate_norms;
  rep["ball_contained"] = sol.ball_contained;
  rep["residual"] = sol.residual;
  rep["budget"] = budget_json(sol.budget);
  rep["warnings"] = sol.warnings;
  const double atv = atomic_tv(cfg.n0) + atomic_tv(cfg.zeta0);
  rep["uniqueness_regime"] =
      atv > 0 ? "atomic part present; uniqueness not asserted" : "continuous data";
  const KatoNorms kn = kato_norms(sol.traj, cfg.indices);
  rep["kato_norms"] = {{"x1", kn.x1()}, {"x2", kn.x2()}, {"x3", kn.x3()}, {"total", kn.total()}};
  write_text(cfg.output_dir + "/report.json", rep.dump(2));

  std::vector<std::string> files = dump_run(cfg.output_dir, make_series(sol.traj));
  files.push_back(cfg.output_dir + "/report.json");
  files.push_back(cfg.output_dir + "/iterations.csv");
  write_manifest(cfg.output_dir, cfg, files);

  std::printf("status %s  iterations %d  horizon %.6g  seed norm %.6e (eps_max %.6e)\n",
              sol.status.c_str(), sol.iterations, sol.horizon_used, sol.seed_norm,
              sol.budget.eps_max);
  for (const auto& w : sol.warnings) std::printf("warning: %s\n", w.c_str());
  return sol.converged ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  bool has_phi = false;
  const VectorField gp = config_potential(cfg, &has_phi);
  const double gp_inf = has_phi ? field_sup_magnitude(gp) : 0.0;
  Ledger led;

  if (cfg.solver == "picard" || cfg.solver == "both") {
    const MildSolution sol = solve_picard(cfg.n0, cfg.c0, cfg.zeta0, cfg.grid, cfg.indices,
                                          cfg.picard, has_phi ? &gp : nullptr);
    LedgerEntry conv{"picard-converged", "fixed-point", 1.0, double(sol.iterations),
                     sol.converged ? "pass" : "fail", sol.status};
    led.add(conv);
    if (sol.converged) {
      Ledger runs = run_ledger(make_series(sol.traj), cfg, gp_inf);
      for (auto& e : runs.entries) led.add(e);
      const ScalarField psi = gaussian_test_function(cfg.grid);
      auto psi_fn = [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); };
      led.add(check_weak_convergence(sol.traj, cfg.n0, psi_fn, psi));
    }
  }
  if (cfg.solver == "oracle" || cfg.solver == "both") {
    const int j = mollification_of(cfg);
    const OracleState init = oracle_initial(cfg, j);
    const std::vector<double> snaps =
        graded_times(cfg.horizon, cfg.picard.nodes, cfg.picard.grading);
    const OracleRun run =
        run_oracle(init, cfg.horizon, cfg.imex_dt, snaps, has_phi ? &gp : nullptr);
    Ledger runs = run_ledger(make_series(run, &init), cfg, gp_inf);
    for (auto& e : runs.entries) {
      e.name = "oracle-" + e.name;
      led.add(e);
    }
  }

  write_text(cfg.output_dir + "/ledger.json", ledger_to_json(led));
  write_text(cfg.output_dir + "/ledger.csv", ledger_to_csv(led));
  write_manifest(cfg.output_dir, cfg,
                 {cfg.output_dir + "/ledger.json", cfg.output_dir + "/ledger.csv"});
  print_ledger(led);
  return led.all_pass() ? 0 : 1;
}

int cmd_compare(const RunConfig& cfg, double tol) {
  std::filesystem::create_directories(cfg.output_dir);
  bool has_phi = false;
  const VectorField gp = config_potential(cfg, &has_phi);
  const MildSolution sol = solve_picard(cfg.n0, cfg.c0, cfg.zeta0, cfg.grid, cfg.indices,
                                        cfg.picard, has_phi ? &gp : nullptr);
  if (!sol.converged) {
    std::fprintf(stderr, "picard did not converge: %s\n", sol.status.c_str());
    return 2;
  }
  const OracleState init = oracle_initial(cfg, sol.mollification);
  const OracleRun run = run_oracle(init, sol.horizon_used, cfg.imex_dt, sol.traj.times,
                                   has_phi ? &gp : nullptr);

  std::ofstream csv(cfg.output_dir + "/compare.csv");
  csv << "t,rel_n,rel_c,rel_zeta\n";
  csv.precision(17);
  double worst = 0.0;
  const double h = cfg.grid.h();
  for (std::size_t k = 0; k < sol.traj.times.size(); ++k) {
    const double rn = rel_l2_error(sol.traj.n[k], run.snapshots[k].n, h);
    const double rc = rel_l2_error(sol.traj.c[k], run.snapshots[k].c, h);
    const double rz = rel_l2_error(sol.traj.zeta[k], run.snapshots[k].zeta, h);
    csv << sol.traj.times[k] << "," << rn << "," << rc << "," << rz << "\n";
    worst = std::max({worst, rn, rc, rz});
  }
  csv.close();
  write_manifest(cfg.output_dir, cfg, {cfg.output_dir + "/compare.csv"});
  std::printf("matched nodes %zu  max relative L2 %.6e  tol %.6e\n", sol.traj.times.size(),
              worst, tol);
  return worst <= tol ? 0 : 1;
}

int cmd_scale_check(const RunConfig& cfg, int lambda) {
  ScalingCheckInputs in;
  in.n0 = cfg.n0;
  in.c0 = cfg.c0;
  in.zeta0 = cfg.zeta0;
  in.grid = cfg.grid;
  in.horizon = cfg.horizon;
  in.dt = cfg.imex_dt;
  in.lambda = lambda;
  in.has_potential = cfg.potential.present();
  const LedgerEntry e = check_scaling_covariance(in);
  std::printf("%s: %s  measured %.6e  bound %.6e  %s\n", e.name.c_str(), e.status.c_str(),
              e.measured, e.bound, e.note.c_str());
  return e.status == "fail" ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chemotaxis-Navier-Stokes mild-solution toolkit"};
  app.require_subcommand(1);

  std::string config_path, json_path;
  IndexSet idx;
  int sweep = 0, lambda = 2;
  double tol = 1e-4;

  auto* validate = app.add_subcommand("validate-indices", "check a sextuple against Condition A");
  validate->add_option("--config", config_path, "JSON config supplying the indices");
  validate->add_option("--p1", idx.p1);
  validate->add_option("--p2", idx.p2);
  validate->add_option("--p3", idx.p3);
  validate->add_option("--alpha1", idx.alpha1);
  validate->add_option("--alpha2", idx.alpha2);
  validate->add_option("--alpha3", idx.alpha3);
  validate->add_option("--json", json_path, "also write the report as JSON");
  validate->add_option("--sweep", sweep, "sample a KxKxK grid of the index region instead");

  auto* simulate = app.add_subcommand("simulate", "IMEX run with the basic ledger");
  simulate->add_option("--config", config_path)->required();
  auto* picard = app.add_subcommand("picard", "Picard fixed-point solve");
  picard->add_option("--config", config_path)->required();
  auto* verify = app.add_subcommand("verify", "run the configured solver(s) and every check");
  verify->add_option("--config", config_path)->required();
  auto* compare = app.add_subcommand("compare", "Picard vs IMEX at matched nodes");
  compare->add_option("--config", config_path)->required();
  compare->add_option("--tol", tol, "acceptance threshold on relative L2");
  auto* scale = app.add_subcommand("scale-check", "parabolic rescaling equivariance");
  scale->add_option("--config", config_path)->required();
  scale->add_option("--lambda", lambda, "integer scale factor");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      if (!config_path.empty()) idx = config_from_json_file(config_path).indices;
      return cmd_validate(idx, json_path, sweep);
    }
    const RunConfig cfg = config_from_json_file(config_path);
    const ConditionReport rep = validate_indices(cfg.indices);
    if (!rep.admissible) {
      std::fprintf(stderr, "config indices fail Condition A:\n");
      print_report(rep);
      return 1;
    }
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (picard->parsed()) return cmd_picard(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (compare->parsed()) return cmd_compare(cfg, tol);
    if (scale->parsed()) return cmd_scale_check(cfg, lambda);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}
