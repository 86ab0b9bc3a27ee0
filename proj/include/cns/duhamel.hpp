#pragma once

#include "cns/condition_a.hpp"
#include "cns/trajectory.hpp"

namespace cns {

// One Duhamel integral evaluated at time t by the graded product rule.
// The two trajectory slots supply the factors:
//   B112(A, B) = int div e^{(t-s)D} ( n_A grad c_B )
//   B113(A, B) = int div e^{(t-s)D} ( n_A u_B )
//   B223(A, B) = int     e^{(t-s)D} ( u_B . grad c_A )
//   B212(A, B) = int     e^{(t-s)D} ( n_A c_B )
//   B333(A, B) = int div e^{(t-s)D} ( zeta_A u_B )
//   L13 (A, -) = int perp-div e^{(t-s)D} ( n_A grad phi )
// Products are dealiased; the endpoint exponents of the rule come from
// op_exponents.  L13 requires grad_phi.
ScalarField duhamel_apply(OpId op, const Trajectory& A, const Trajectory& B, double t,
                          const IndexSet& idx, int panels,
                          const VectorField* grad_phi = nullptr);

}  // namespace cns
