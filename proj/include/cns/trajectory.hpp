#pragma once

#include <vector>

#include "cns/biot_savart.hpp"
#include "cns/condition_a.hpp"
#include "cns/field.hpp"

namespace cns {

// Discrete-time representation of (n, c, zeta) on a graded node set
// 0 < t_1 < ... < t_M, together with the t = 0 (mollified) data and the
// cached velocity at every node.  Sampling between nodes blends linearly,
// in t below the first node and in log t between nodes, which matches the
// power-law behavior the Kato norms encode.
struct Trajectory {
  Grid grid;
  std::vector<double> times;
  std::vector<ScalarField> n, c, zeta;
  std::vector<VectorField> u;
  ScalarField n0, c0, zeta0;
  VectorField u0;
};

void check_trajectory(const Trajectory& tr);

struct Sample {
  ScalarField n, c, zeta;
  VectorField u;
};

Sample sample_trajectory(const Trajectory& tr, double s);

// Kato-norm components measured over the node set:
//   n     : sup_k t_k^alpha1 ||n(t_k)||_p1
//   c_sup : sup_k ||c(t_k)||_inf
//   c_grad: sup_k t_k^alpha2 ||grad c(t_k)||_p2
//   zeta  : sup_k t_k^alpha3 ||zeta(t_k)||_p3
struct KatoNorms {
  double n = 0, c_sup = 0, c_grad = 0, zeta = 0;
  double x1() const { return n; }
  double x2() const { return c_sup + c_grad; }
  double x3() const { return zeta; }
  double total() const { return x1() + x2() + x3(); }
};

KatoNorms kato_norms(const Trajectory& tr, const IndexSet& idx);

// Same norms on the componentwise difference of two trajectories sharing a
// node set.
KatoNorms kato_norms_diff(const Trajectory& a, const Trajectory& b, const IndexSet& idx);

}  // namespace cns
