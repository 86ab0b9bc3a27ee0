#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cns/condition_a.hpp"
#include "cns/measures.hpp"
#include "cns/trajectory.hpp"

namespace cns {

struct PicardParams {
  double horizon = 0.1;
  int nodes = 16;          // trajectory nodes
  double grading = 2.0;    // node grading exponent
  int quad_panels = 10;    // panels per Duhamel integral
  double tol = 1e-6;       // X-norm increment at which iteration stops
  int max_iter = 40;
  double c_master = 1.0;   // master constant fed into the budget
  int mollification = 0;   // 0 = finest level the grid resolves
};

// Heat flow of the mollified data on a graded node set; the fixed-point
// iteration starts here.  Demands nonnegative data up to a 1e-12 relative
// undershoot.
Trajectory seed_trajectory(const ScalarField& n0, const ScalarField& c0, const ScalarField& zeta0,
                           const Grid& g, double horizon, int nodes, double grading);

// One application of the mild-formulation map: the seed minus the bilinear
// Duhamel terms, plus the potential term in the vorticity slot.
Trajectory picard_step(const Trajectory& x, const Trajectory& seed, const IndexSet& idx,
                       int quad_panels, const VectorField* grad_phi);

struct MildSolution {
  Trajectory traj;
  bool converged = false;
  std::string status;  // converged | diverged | max-iter
  int iterations = 0;
  int halvings = 0;
  double horizon_used = 0.0;
  int mollification = 0;

  double seed_norm = 0.0;
  KatoNorms seed_components;
  std::vector<double> increments;  // X-norm of successive differences
  std::vector<double> ratios;      // increments[k] / increments[k-1]
  std::vector<double> iterate_norms;
  std::vector<bool> ball_ok;       // iterate norm <= 2 K1 seed_norm
  bool ball_contained = false;
  double residual = -1.0;          // one extra map application after convergence
  ContractionBudget budget;
  std::vector<std::string> warnings;
};

// Full pipeline: mollify the measures, seed, iterate to the stated
// tolerance.  Divergence (three consecutive ratios >= 1) halves the horizon
// and restarts, at most five times.  Per-iteration increments stream to
// `csv` when given, as "iter,dn,dc,dzeta,ratio" lines.
MildSolution solve_picard(const RadonMeasureSpec& n0, const RadonMeasureSpec& c0,
                          const RadonMeasureSpec& zeta0, const Grid& g, const IndexSet& idx,
                          const PicardParams& prm, const VectorField* grad_phi = nullptr,
                          std::ostream* csv = nullptr);

}  // namespace cns
