#include "cns/picard.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cns/duhamel.hpp"
#include "cns/norms.hpp"
#include "cns/quadrature.hpp"
#include "cns/spectral.hpp"

namespace cns {

Trajectory seed_trajectory(const ScalarField& n0, const ScalarField& c0, const ScalarField& zeta0,
                           const Grid& g, double horizon, int nodes, double grading) {
  check_grid(g);
  check_field(n0, g);
  check_field(c0, g);
  check_field(zeta0, g);
  if (nodes < 8) throw std::invalid_argument("seed_trajectory needs at least 8 nodes");

  const double nfloor = -1e-12 * std::max(1.0, linf_norm(n0));
  const double cfloor = -1e-12 * std::max(1.0, linf_norm(c0));
  if (n0.minCoeff() < nfloor) throw std::invalid_argument("cell density data must be nonnegative");
  if (c0.minCoeff() < cfloor) throw std::invalid_argument("chemical data must be nonnegative");

  Trajectory tr;
  tr.grid = g;
  tr.times = graded_times(horizon, nodes, grading);
  tr.n0 = n0;
  tr.c0 = c0;
  tr.zeta0 = zeta0;
  tr.u0 = velocity_from_vorticity(zeta0, g);
  const size_t M = tr.times.size();
  tr.n.resize(M);
  tr.c.resize(M);
  tr.zeta.resize(M);
  tr.u.resize(M);
  for (size_t k = 0; k < M; ++k) {
    const double t = tr.times[k];
    tr.n[k] = heat_propagate(n0, g, t);
    tr.c[k] = heat_propagate(c0, g, t);
    tr.zeta[k] = heat_propagate(zeta0, g, t);
    tr.u[k] = velocity_from_vorticity(tr.zeta[k], g);
  }
  check_trajectory(tr);
  return tr;
}

Trajectory picard_step(const Trajectory& x, const Trajectory& seed, const IndexSet& idx,
                       int quad_panels, const VectorField* grad_phi) {
  check_trajectory(x);
  check_trajectory(seed);
  if (x.times != seed.times) throw std::invalid_argument("iterate and seed node sets disagree");

  Trajectory out = x;
  const Grid& g = x.grid;
  for (size_t k = 0; k < x.times.size(); ++k) {
    const double t = x.times[k];
    out.n[k] = seed.n[k] - duhamel_apply(OpId::B112, x, x, t, idx, quad_panels) -
               duhamel_apply(OpId::B113, x, x, t, idx, quad_panels);
    out.c[k] = seed.c[k] - duhamel_apply(OpId::B223, x, x, t, idx, quad_panels) -
               duhamel_apply(OpId::B212, x, x, t, idx, quad_panels);
    out.zeta[k] = seed.zeta[k] - duhamel_apply(OpId::B333, x, x, t, idx, quad_panels);
    if (grad_phi)
      out.zeta[k] += duhamel_apply(OpId::L13, x, x, t, idx, quad_panels, grad_phi);
    out.u[k] = velocity_from_vorticity(out.zeta[k], g);
  }
  return out;
}

MildSolution solve_picard(const RadonMeasureSpec& n0, const RadonMeasureSpec& c0,
                          const RadonMeasureSpec& zeta0, const Grid& g, const IndexSet& idx,
                          const PicardParams& prm, const VectorField* grad_phi, std::ostream* csv) {
  check_grid(g);
  const ConditionReport rep = validate_indices(idx);
  if (!rep.admissible) throw std::invalid_argument("indices fail the admissibility conditions");
  if (!(prm.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

  MildSolution sol;
  sol.mollification = prm.mollification > 0 ? prm.mollification : mollification_level(g);

  const ScalarField n0m = mollify(n0, g, sol.mollification);
  const ScalarField c0m = mollify(c0, g, sol.mollification);
  const ScalarField z0m = mollify(zeta0, g, sol.mollification);

  double gp2 = 0.0;
  if (grad_phi) {
    const ScalarField gmag = (grad_phi->x.square() + grad_phi->y.square()).sqrt().eval();
    gp2 = lp_norm(gmag, 2.0, g.h());
  }
  sol.budget = contraction_budget(idx, gp2, prm.c_master);

  const double cthr = c0_threshold(idx.p3);
  if (linf_norm(c0m) > cthr)
    sol.warnings.push_back("chemical data exceeds the smallness threshold " + std::to_string(cthr) +
                           "; a-priori vorticity budgets may not apply");

  double horizon = prm.horizon;
  if (csv) (*csv) << "iter,dn,dc,dzeta,ratio\n";

  for (sol.halvings = 0; sol.halvings <= 5; ++sol.halvings) {
    Trajectory seed = seed_trajectory(n0m, c0m, z0m, g, horizon, prm.nodes, prm.grading);
    sol.seed_components = kato_norms(seed, idx);
    sol.seed_norm = sol.seed_components.total();
    const double ball_radius = sol.budget.finite ? 2.0 * sol.budget.k1 * sol.seed_norm : 0.0;

    sol.increments.clear();
    sol.ratios.clear();
    sol.iterate_norms.clear();
    sol.ball_ok.clear();

    Trajectory prev = seed;
    int bad_streak = 0;
    bool diverged = false;

    for (int iter = 1; iter <= prm.max_iter; ++iter) {
      Trajectory next = picard_step(prev, seed, idx, prm.quad_panels, grad_phi);
      const KatoNorms inc = kato_norms_diff(next, prev, idx);
      const double total = inc.total();
      sol.increments.push_back(total);
      const double ratio =
          sol.increments.size() > 1 ? total / sol.increments[sol.increments.size() - 2] : 0.0;
      if (sol.increments.size() > 1) sol.ratios.push_back(ratio);

      const double xnorm = kato_norms(next, idx).total();
      sol.iterate_norms.push_back(xnorm);
      sol.ball_ok.push_back(!sol.budget.finite || xnorm <= ball_radius);

      if (csv)
        (*csv) << iter << ',' << inc.x1() << ',' << inc.x2() << ',' << inc.x3() << ','
               << (sol.increments.size() > 1 ? ratio : 0.0) << '\n';

      prev = std::move(next);
      sol.iterations = iter;

      if (total < prm.tol) {
        sol.converged = true;
        break;
      }
      if (sol.increments.size() > 1 && ratio >= 1.0) {
        if (++bad_streak >= 3) {
          diverged = true;
          break;
        }
      } else {
        bad_streak = 0;
      }
    }

    sol.horizon_used = horizon;
    if (sol.converged) {
      sol.status = "converged";
      Trajectory fixed = picard_step(prev, seed, idx, prm.quad_panels, grad_phi);
      sol.residual = kato_norms_diff(fixed, prev, idx).total();
      sol.traj = std::move(prev);
      break;
    }
    if (!diverged) {
      sol.status = "max-iter";
      sol.residual = sol.increments.empty() ? -1.0 : sol.increments.back();
      sol.traj = std::move(prev);
      break;
    }
    sol.status = "diverged";
    sol.residual = sol.increments.empty() ? -1.0 : sol.increments.back();
    sol.traj = std::move(prev);
    if (sol.halvings == 5) break;
    horizon *= 0.5;
    sol.warnings.push_back("iteration diverged; halving the horizon to " + std::to_string(horizon));
  }

  sol.ball_contained = !sol.ball_ok.empty();
  for (bool ok : sol.ball_ok) sol.ball_contained = sol.ball_contained && ok;
  return sol;
}

}  // namespace cns
