#include "cns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "cns/biot_savart.hpp"
#include "cns/norms.hpp"
#include "cns/spectral.hpp"

namespace cns {

bool Ledger::all_pass() const {
  for (const auto& e : entries)
    if (e.status == "fail") return false;
  return true;
}

std::string ledger_to_json(const Ledger& led) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : led.entries)
    j.push_back({{"name", e.name},
                 {"claim", e.claim},
                 {"bound", e.bound},
                 {"measured", e.measured},
                 {"status", e.status},
                 {"note", e.note}});
  return j.dump(2);
}

std::string ledger_to_csv(const Ledger& led) {
  std::ostringstream ss;
  ss << "name,claim,bound,measured,status,note\n";
  for (const auto& e : led.entries) {
    ss.precision(17);
    ss << e.name << ',' << e.claim << ',' << e.bound << ',' << e.measured << ',' << e.status << ','
       << '"' << e.note << '"' << '\n';
  }
  return ss.str();
}

SeriesView make_series(const Trajectory& tr) {
  check_trajectory(tr);
  SeriesView sv;
  sv.grid = tr.grid;
  sv.times.push_back(0.0);
  sv.n.push_back(&tr.n0);
  sv.c.push_back(&tr.c0);
  sv.zeta.push_back(&tr.zeta0);
  for (size_t k = 0; k < tr.times.size(); ++k) {
    sv.times.push_back(tr.times[k]);
    sv.n.push_back(&tr.n[k]);
    sv.c.push_back(&tr.c[k]);
    sv.zeta.push_back(&tr.zeta[k]);
  }
  return sv;
}

SeriesView make_series(const OracleRun& run, const OracleState* initial) {
  SeriesView sv;
  if (initial) {
    sv.grid = initial->grid;
    sv.times.push_back(initial->t);
    sv.n.push_back(&initial->n);
    sv.c.push_back(&initial->c);
    sv.zeta.push_back(&initial->zeta);
  } else if (!run.snapshots.empty()) {
    sv.grid = run.snapshots.front().grid;
  }
  for (const auto& st : run.snapshots) {
    sv.times.push_back(st.t);
    sv.n.push_back(&st.n);
    sv.c.push_back(&st.c);
    sv.zeta.push_back(&st.zeta);
  }
  if (sv.times.empty()) throw std::invalid_argument("empty series");
  return sv;
}

LedgerEntry check_mass_conservation(const SeriesView& sv, double rel_tol) {
  const double h = sv.grid.h();
  const double m0 = mass(*sv.n.front(), h);
  const double scale = std::max(std::abs(m0), 1e-300);
  double worst = 0.0;
  for (const auto* f : sv.n) worst = std::max(worst, std::abs(mass(*f, h) - m0) / scale);
  return {"mass drift of the cell density", "mass-conservation", rel_tol, worst,
          worst <= rel_tol ? "pass" : "fail", ""};
}

LedgerEntry check_nonnegativity(const SeriesView& sv, double rel_tol) {
  double scale = 0.0, low = 0.0;
  for (const auto* f : sv.n) {
    scale = std::max(scale, linf_norm(*f));
    low = std::min(low, f->minCoeff());
  }
  const double rel = scale > 0.0 ? -low / scale : 0.0;
  return {"density undershoot relative to its sup", "sign-preservation", rel_tol, rel,
          rel <= rel_tol ? "pass" : "fail", ""};
}

LedgerEntry check_max_principle(const SeriesView& sv, double tol) {
  double worst = 0.0, prev = linf_norm(*sv.c.front());
  for (size_t k = 1; k < sv.c.size(); ++k) {
    const double cur = linf_norm(*sv.c[k]);
    worst = std::max(worst, cur - prev);
    prev = cur;
  }
  return {"increase of the chemical sup between snapshots", "max-principle", tol, worst,
          worst <= tol ? "pass" : "fail", ""};
}

namespace {

size_t first_positive(const SeriesView& sv) {
  for (size_t k = 0; k < sv.times.size(); ++k)
    if (sv.times[k] > 0.0) return k;
  throw std::invalid_argument("series has no positive-time snapshot");
}

// The p > 2 Gronwall budget, returned to the power 1.
double vorticity_budget_p(const SeriesView& sv, double p, double grad_phi_inf) {
  const size_t k0 = first_positive(sv);
  const double h = sv.grid.h();
  const double sigma = sv.times[k0];
  const double T = sv.times.back() - sigma;
  double cnp = 0.0;
  for (size_t k = k0; k < sv.times.size(); ++k) cnp = std::max(cnp, lp_norm(*sv.n[k], p, h));
  const double z0p = lp_norm(*sv.zeta[k0], p, h);
  const double budget_p = std::exp(T * (p - 1.0) * (p - 2.0) / 4.0) *
                          (std::pow(z0p, p) + T * 0.5 * (p - 1.0) * std::pow(grad_phi_inf, p) *
                                                  std::pow(cnp, p));
  return std::pow(budget_p, 1.0 / p);
}

}  // namespace

LedgerEntry check_vorticity_budget(const SeriesView& sv, double p, double c0_sup,
                                   double grad_phi_inf, double tol) {
  if (!(p > 1.0)) throw std::invalid_argument("vorticity budget needs p > 1");
  LedgerEntry e;
  e.name = "vorticity growth budget, p = " + std::to_string(p);
  e.claim = "vorticity-budget";

  const double effective_p = p > 2.0 ? p : 4.0;
  const double thr = c0_threshold(effective_p);
  if (c0_sup > thr) {
    e.status = "skipped";
    e.note = "chemical sup " + std::to_string(c0_sup) + " above the smallness threshold " +
             std::to_string(thr);
    return e;
  }

  const size_t k0 = first_positive(sv);
  const double h = sv.grid.h();
  double bound, measured = 0.0;
  if (p > 2.0) {
    bound = vorticity_budget_p(sv, p, grad_phi_inf);
    for (size_t k = k0; k < sv.times.size(); ++k)
      measured = std::max(measured, lp_norm(*sv.zeta[k], p, h));
  } else {
    const double c4 = vorticity_budget_p(sv, 4.0, grad_phi_inf);
    const double theta = (4.0 - p) / (3.0 * p);
    const double z1 = lp_norm(*sv.zeta[k0], 1.0, h);
    bound = std::pow(z1, theta) * std::pow(c4, 1.0 - theta);
    for (size_t k = k0; k < sv.times.size(); ++k)
      measured = std::max(measured, lp_norm(*sv.zeta[k], p, h));
  }
  e.bound = bound;
  e.measured = measured;
  e.status = measured <= bound * (1.0 + tol) ? "pass" : "fail";
  return e;
}

namespace {

RadonMeasureSpec rescale_density_measure(const RadonMeasureSpec& mu, double lam) {
  if (!mu.density_file.empty())
    throw std::invalid_argument("scaling check does not support gridded density parts");
  RadonMeasureSpec out = mu;
  for (auto& a : out.atoms) a.x /= lam;
  for (auto& gb : out.gaussians) {
    gb.center /= lam;
    gb.variance /= lam * lam;
  }
  for (auto& f : out.filaments)
    for (auto& v : f.vertices) v /= lam;
  return out;
}

RadonMeasureSpec rescale_chemical_measure(const RadonMeasureSpec& mu, double lam) {
  RadonMeasureSpec out = rescale_density_measure(mu, lam);
  for (auto& a : out.atoms) a.w /= lam * lam;
  for (auto& gb : out.gaussians) gb.mass /= lam * lam;
  for (auto& f : out.filaments) f.density /= lam;
  return out;
}

double sup_rel_diff(const ScalarField& got, const ScalarField& ref) {
  const double scale = linf_norm(ref);
  const double diff = linf_norm((got - ref).eval());
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

LedgerEntry check_scaling_covariance(const ScalingCheckInputs& in, double tol) {
  LedgerEntry e;
  e.name = "parabolic rescaling equivariance, lambda = " + std::to_string(in.lambda);
  e.claim = "scaling-covariance";
  e.bound = tol;
  if (in.has_potential) {
    e.status = "skipped";
    e.note = "potential present; the rescaling family holds only for grad phi = 0";
    return e;
  }
  if (in.lambda < 1) throw std::invalid_argument("lambda must be an integer >= 1");

  const double lam = in.lambda;
  const int j1 = mollification_level(in.grid);
  OracleState s1;
  s1.grid = in.grid;
  s1.n = mollify(in.n0, in.grid, j1);
  s1.c = mollify(in.c0, in.grid, j1);
  s1.zeta = mollify(in.zeta0, in.grid, j1);
  const OracleRun r1 = run_oracle(s1, in.horizon, in.dt, {});

  Grid g2{in.grid.extent / lam, in.grid.size};
  const int j2 = in.lambda * j1;
  OracleState s2;
  s2.grid = g2;
  s2.n = mollify(rescale_density_measure(in.n0, lam), g2, j2);
  s2.c = mollify(rescale_chemical_measure(in.c0, lam), g2, j2);
  s2.zeta = mollify(rescale_density_measure(in.zeta0, lam), g2, j2);
  const OracleRun r2 = run_oracle(s2, in.horizon / (lam * lam), in.dt / (lam * lam), {});

  const double lam2 = lam * lam;
  double worst = sup_rel_diff(r2.final_state.n, (lam2 * r1.final_state.n).eval());
  worst = std::max(worst, sup_rel_diff(r2.final_state.c, r1.final_state.c));
  worst = std::max(worst, sup_rel_diff(r2.final_state.zeta, (lam2 * r1.final_state.zeta).eval()));
  e.measured = worst;
  e.status = worst <= tol ? "pass" : "fail";
  return e;
}

double atom_plateau(double p, double alpha) {
  if (std::abs(alpha - (1.0 - 1.0 / p)) > 1e-9)
    throw std::invalid_argument("plateau exists only on the scaling line alpha = 1 - 1/p");
  return std::pow(4.0 * M_PI, -(1.0 - 1.0 / p)) * std::pow(p, -1.0 / p);
}

double estimate_atomic_seminorm(const ScalarField& mollified, const Grid& g, double p,
                                double alpha, double mollifier_var) {
  check_grid(g);
  check_field(mollified, g);
  if (!(mollifier_var > 0.0)) throw std::invalid_argument("mollifier variance must be positive");
  const double h = g.h();
  const double s = mollifier_var;
  const double tau_lo = std::max(2.0 * s, 10.0 * h * h + 0.5 * s);
  const double tau_hi = g.extent * g.extent / 32.0;
  if (!(tau_hi > tau_lo * 2.0))
    throw std::invalid_argument("grid leaves no usable window for the seminorm fit");

  std::vector<double> taus;
  for (double tau = tau_lo; tau <= tau_hi * (1.0 + 1e-12); tau *= std::sqrt(2.0))
    taus.push_back(tau);
  if (taus.size() < 5) throw std::invalid_argument("too few fit points for the seminorm estimate");

  const int m = static_cast<int>(taus.size());
  Eigen::MatrixXd X(m, 4);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const double tau = taus[i];
    // the mollifier already carries heat time s/2, so the profile at tau is
    // exactly the raw measure heated for tau
    const ScalarField ft = heat_propagate(mollified, g, tau - 0.5 * s);
    y[i] = std::pow(tau, alpha) * lp_norm(ft, p, h);
    X(i, 0) = 1.0;
    X(i, 1) = std::pow(tau, 0.25);
    X(i, 2) = std::pow(tau, 0.75);
    X(i, 3) = std::pow(tau, 1.25);
  }
  Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
  return std::max(coef[0], 0.0);
}

LedgerEntry check_weak_convergence(const Trajectory& tr, const RadonMeasureSpec& mu0,
                                   const std::function<double(double, double)>& psi,
                                   const ScalarField& psi_grid, int count) {
  check_trajectory(tr);
  if (count < 2 || static_cast<size_t>(count) > tr.times.size())
    throw std::invalid_argument("weak convergence check needs 2 <= count <= nodes");
  const double h = tr.grid.h();
  const double exact = pair_measure(mu0, psi, 0.25 * h);
  const double floor = std::abs(weak_pairing(tr.n0, psi_grid, h) - exact);

  std::vector<double> v(count);
  for (int k = 0; k < count; ++k)
    v[k] = std::abs(weak_pairing(tr.n[k], psi_grid, h) - exact);

  bool monotone = true;
  for (int k = 1; k < count; ++k) monotone = monotone && v[k] >= v[k - 1] * (1.0 - 1e-9);
  const bool approaches = (v.front() - floor) <= 0.25 * (v.back() - floor) + 1e-12;

  LedgerEntry e;
  e.name = "weak convergence to the initial measure";
  e.claim = "weak-initial-convergence";
  e.bound = floor;
  e.measured = v.front();
  e.status = (monotone && approaches) ? "pass" : "fail";
  std::ostringstream note;
  note << "pairing gaps ";
  for (int k = 0; k < count; ++k) note << (k ? " " : "") << v[k];
  note << " vs mollification floor " << floor;
  e.note = note.str();
  return e;
}

double measure_master_constant(const Grid& g, const IndexSet& idx) {
  check_grid(g);
  const double h = g.h();
  const double L = g.extent;
  auto invp = [](double p) { return std::isinf(p) ? 0.0 : 1.0 / p; };
  const double q1 = invp(idx.p1), q2 = invp(idx.p2), q3 = invp(idx.p3);

  struct Pair {
    double inv_r, q;
    int deriv;
  };
  const Pair pairs[] = {
      {q1 + q2, idx.p1, 1},          // density flux, chemotactic part
      {q1 + q3 - 0.5, idx.p1, 1},    // density flux, advective part
      {q2 + q3 - 0.5, std::numeric_limits<double>::infinity(), 0},
      {q2 + q3 - 0.5, idx.p2, 1},    // chemical transport
      {q1, std::numeric_limits<double>::infinity(), 0},
      {q1, idx.p2, 1},               // absorption term
      {2.0 * q3 - 0.5, idx.p3, 1},   // vorticity flux
      {q1 + 0.5, idx.p3, 1},         // potential forcing
  };

  double best = 0.0;
  for (double w : {16.0 * h * h, 64.0 * h * h, 256.0 * h * h}) {
    if (w > L * L / 64.0) continue;
    ScalarField f = zero_field(g);
    const double inv2v = 0.5 / w;
    for (int i = 0; i < g.size; ++i)
      for (int jj = 0; jj < g.size; ++jj) {
        const double x = g.coord(i), yy = g.coord(jj);
        f(i, jj) = inv2v / M_PI * std::exp(-(x * x + yy * yy) * inv2v);
      }

    for (const Pair& pr : pairs) {
      if (!(pr.inv_r > 0.0 && pr.inv_r <= 1.0)) continue;
      const double r = 1.0 / pr.inv_r;
      const double fr = lp_norm(f, r, h);
      if (!(fr > 0.0)) continue;
      for (double t : {0.5 * w, 2.0 * w, 8.0 * w}) {
        if (t > L * L / 128.0) continue;
        const ScalarField ft = heat_propagate(f, g, t);
        double num;
        if (pr.deriv == 0) {
          num = lp_norm(ft, pr.q, h);
        } else {
          const VectorField gf = gradient(ft, g);
          num = lp_norm((gf.x.square() + gf.y.square()).sqrt().eval(), pr.q, h);
        }
        const double decay = 0.5 * pr.deriv + (pr.inv_r - invp(pr.q));
        best = std::max(best, num * std::pow(t, decay) / fr);
      }
    }

    // Biot-Savart ratio on the same probe
    const VectorField u = velocity_from_vorticity(f, g);
    const double qq3 = 1.0 / (q3 - 0.5);
    const double hls = lp_norm((u.x.square() + u.y.square()).sqrt().eval(), qq3, h) /
                       lp_norm(f, idx.p3, h);
    best = std::max(best, hls);
  }
  if (!(best > 0.0)) throw std::runtime_error("no usable probe for the master constant");
  return best;
}

}  // namespace cns
