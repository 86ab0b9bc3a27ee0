#pragma once

#include <string>
#include <vector>

#include "cns/field.hpp"

namespace cns {

struct OracleState {
  Grid grid;
  double t = 0.0;
  ScalarField n, c, zeta;
};

// One first-order IMEX step: explicit transport / reaction, exact heat flow
// of the updated fields over dt.  Advection uses the free-space velocity of
// the current vorticity; products are dealiased; the density flux is kept
// in conservative form so the discrete mass moves only by what diffuses out
// of the window.  Throws when dt violates dt <= h / (4 max |u|), quoting a
// usable dt in the message.
void imex_step(OracleState& st, double dt, const VectorField* grad_phi = nullptr);

struct OracleRun {
  std::vector<double> times;
  std::vector<OracleState> snapshots;
  OracleState final_state;
  int steps = 0;
  double min_n = 0.0;   // most negative density value seen
  double max_c = 0.0;   // sup of the chemical at t = 0
};

// March to t_final with fixed dt, capturing the state at each requested
// time (snapped to the step grid).  Checkpointing writes the full state to
// <dir>/checkpoint_* dumps; a run restarted from a checkpoint reproduces
// the uninterrupted run bit for bit, since the state round-trips exactly.
OracleRun run_oracle(const OracleState& initial, double t_final, double dt,
                     const std::vector<double>& snapshot_times,
                     const VectorField* grad_phi = nullptr,
                     const std::string& checkpoint_dir = "", int checkpoint_every = 0);

void save_checkpoint(const OracleState& st, const std::string& dir, const std::string& tag);
OracleState load_checkpoint(const std::string& dir, const std::string& tag);

}  // namespace cns
