#include "cns/imex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/biot_savart.hpp"
#include "cns/field_io.hpp"
#include "cns/norms.hpp"
#include "cns/spectral.hpp"

namespace cns {

void imex_step(OracleState& st, double dt, const VectorField* grad_phi) {
  check_grid(st.grid);
  check_field(st.n, st.grid);
  check_field(st.c, st.grid);
  check_field(st.zeta, st.grid);
  if (!(dt > 0.0)) throw std::invalid_argument("imex_step needs dt > 0");

  const Grid& g = st.grid;
  const VectorField u = velocity_from_vorticity(st.zeta, g);
  const double umax = std::sqrt((u.x.square() + u.y.square()).maxCoeff());
  const double dt_max = g.h() / (4.0 * std::max(umax, 1e-300));
  if (dt > dt_max)
    throw std::invalid_argument("advective step too large: dt <= " + std::to_string(dt_max) +
                                " required at this velocity");

  const VectorField gc = gradient(st.c, g);

  VectorField nflux{(dealiased_product(st.n, u.x, g) + dealiased_product(st.n, gc.x, g)).eval(),
                    (dealiased_product(st.n, u.y, g) + dealiased_product(st.n, gc.y, g)).eval()};
  ScalarField Nn = (-divergence(nflux, g)).eval();

  ScalarField Nc = (-dealiased_product(u.x, gc.x, g) - dealiased_product(u.y, gc.y, g) -
                    dealiased_product(st.c, st.n, g))
                       .eval();

  VectorField zflux{dealiased_product(st.zeta, u.x, g), dealiased_product(st.zeta, u.y, g)};
  ScalarField Nz = (-divergence(zflux, g)).eval();
  if (grad_phi) {
    VectorField force{dealiased_product(st.n, grad_phi->x, g),
                      dealiased_product(st.n, grad_phi->y, g)};
    Nz += perp_divergence(force, g);
  }

  st.n = heat_propagate((st.n + dt * Nn).eval(), g, dt);
  st.c = heat_propagate((st.c + dt * Nc).eval(), g, dt);
  st.zeta = heat_propagate((st.zeta + dt * Nz).eval(), g, dt);
  st.t += dt;
}

OracleRun run_oracle(const OracleState& initial, double t_final, double dt,
                     const std::vector<double>& snapshot_times, const VectorField* grad_phi,
                     const std::string& checkpoint_dir, int checkpoint_every) {
  if (!(t_final > initial.t)) throw std::invalid_argument("t_final must exceed the initial time");
  if (!(dt > 0.0)) throw std::invalid_argument("run_oracle needs dt > 0");

  OracleRun run;
  OracleState st = initial;
  run.min_n = st.n.size() ? st.n.minCoeff() : 0.0;
  run.max_c = st.c.size() ? st.c.maxCoeff() : 0.0;

  std::vector<double> wanted = snapshot_times;
  std::sort(wanted.begin(), wanted.end());
  size_t next_snap = 0;

  const long total = std::lround((t_final - initial.t) / dt);
  if (total < 1) throw std::invalid_argument("horizon shorter than one step");

  for (long step = 1; step <= total; ++step) {
    imex_step(st, dt, grad_phi);
    ++run.steps;
    run.min_n = std::min(run.min_n, st.n.minCoeff());

    while (next_snap < wanted.size() && st.t >= wanted[next_snap] - 0.5 * dt) {
      run.times.push_back(st.t);
      run.snapshots.push_back(st);
      ++next_snap;
    }
    if (checkpoint_every > 0 && !checkpoint_dir.empty() && step % checkpoint_every == 0)
      save_checkpoint(st, checkpoint_dir, "step" + std::to_string(step));
  }
  run.final_state = std::move(st);
  return run;
}

void save_checkpoint(const OracleState& st, const std::string& dir, const std::string& tag) {
  dump_field(dir + "/checkpoint_" + tag + "_n", st.n, st.grid, st.t, "n");
  dump_field(dir + "/checkpoint_" + tag + "_c", st.c, st.grid, st.t, "c");
  dump_field(dir + "/checkpoint_" + tag + "_zeta", st.zeta, st.grid, st.t, "zeta");
}

OracleState load_checkpoint(const std::string& dir, const std::string& tag) {
  OracleState st;
  LoadedField n = load_field(dir + "/checkpoint_" + tag + "_n");
  LoadedField c = load_field(dir + "/checkpoint_" + tag + "_c");
  LoadedField z = load_field(dir + "/checkpoint_" + tag + "_zeta");
  if (!(n.grid == c.grid) || !(n.grid == z.grid))
    throw std::runtime_error("checkpoint grids disagree");
  st.grid = n.grid;
  st.t = n.t;
  st.n = std::move(n.f);
  st.c = std::move(c.f);
  st.zeta = std::move(z.f);
  return st;
}

}  // namespace cns
