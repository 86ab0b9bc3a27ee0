#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cns/condition_a.hpp"
#include "cns/imex.hpp"
#include "cns/measures.hpp"
#include "cns/trajectory.hpp"

namespace cns {

// One verified claim.  `claim` is a semantic tag (mass-conservation,
// max-principle, ...), `bound` the budget the run had to respect and
// `measured` what it actually did.  status is pass | fail | skipped.
struct LedgerEntry {
  std::string name;
  std::string claim;
  double bound = 0.0;
  double measured = 0.0;
  std::string status;
  std::string note;
};

struct Ledger {
  std::vector<LedgerEntry> entries;
  void add(LedgerEntry e) { entries.push_back(std::move(e)); }
  bool all_pass() const;
};

std::string ledger_to_json(const Ledger& led);
std::string ledger_to_csv(const Ledger& led);

// Lightweight non-owning view of a run (trajectory nodes or oracle
// snapshots, optionally with the t = 0 state in front).
struct SeriesView {
  Grid grid;
  std::vector<double> times;
  std::vector<const ScalarField*> n, c, zeta;
};

SeriesView make_series(const Trajectory& tr);
SeriesView make_series(const OracleRun& run, const OracleState* initial = nullptr);

// The run-level checks.  Tolerances are the ones the harness pins.
LedgerEntry check_mass_conservation(const SeriesView& sv, double rel_tol = 1e-4);
LedgerEntry check_nonnegativity(const SeriesView& sv, double rel_tol = 1e-6);
LedgerEntry check_max_principle(const SeriesView& sv, double tol = 1e-8);

// Gronwall budget for the vorticity growth.  For p > 2 the budget is
// computed from the first positive-time snapshot; 1 < p <= 2 interpolates
// through the measured L1 norm and the p = 4 budget.  Needs the sup of the
// chemical at time zero to decide applicability and ||grad phi||_inf for
// the forcing term.
LedgerEntry check_vorticity_budget(const SeriesView& sv, double p, double c0_sup,
                                   double grad_phi_inf, double tol = 1e-6);

// Parabolic rescaling equivariance of the oracle: the run on (L, N, dt) and
// the run on (L/lambda, N, dt/lambda^2) with analytically transformed data
// must coincide nodewise after undoing the scaling.  Skipped when a
// potential is present.  lambda must be a positive integer so the
// mollification levels match exactly.
struct ScalingCheckInputs {
  RadonMeasureSpec n0, c0, zeta0;
  Grid grid;
  double horizon = 0.0;
  double dt = 0.0;
  int lambda = 2;
  bool has_potential = false;
};
LedgerEntry check_scaling_covariance(const ScalingCheckInputs& in, double tol = 1e-3);

// Atomic-part detector: fits tau^alpha ||e^{(tau - s/2) D} f||_p on a
// geometric tau grid against {1, tau^{1/4}, tau^{3/4}, tau^{5/4}} and
// returns the nonnegative constant channel.  An atom of weight w sits on
// the constant (for p = 2, alpha = 1/2 at height w (8 pi)^{-1/2}); a
// filament lives in the fractional channels.
double estimate_atomic_seminorm(const ScalarField& mollified, const Grid& g, double p,
                                double alpha, double mollifier_var);

// Height of the constant channel for a unit atom.
double atom_plateau(double p, double alpha);

// Weak convergence toward the initial measure: the gridded pairings at the
// first `count` nodes must increase with t and start near the mollification
// floor |<mu_moll - mu, psi>|.
LedgerEntry check_weak_convergence(const Trajectory& tr, const RadonMeasureSpec& mu0,
                                   const std::function<double(double, double)>& psi,
                                   const ScalarField& psi_grid, int count = 5);

// Empirical master constant: the largest smoothing / Biot-Savart ratio the
// discrete operators produce on a family of Gaussian probes, over the
// (r -> q, derivative) pairs the five Duhamel estimates use.
double measure_master_constant(const Grid& g, const IndexSet& idx);

}  // namespace cns
