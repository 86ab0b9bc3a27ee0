#pragma once

#include "cns/field.hpp"

namespace cns {

// ============================================================
// Whole-plane heat semigroup on gridded data
// ============================================================
//
// The field is zero-padded onto the doubled 2N x 2N box (centered), the
// exact Gaussian symbol exp(-|xi|^2 t) is applied there, and the original
// window is cropped back out.  As long as the data stays concentrated in
// the central quarter of the box the wrap-around contribution is below
// roundoff for the horizons used here.  t = 0 returns the input unchanged.
ScalarField heat_propagate(const ScalarField& f, const Grid& g, double t);

// div(e^{tD} v) and perp-div(e^{tD} v) = d1 v2 - d2 v1, evaluated with the
// derivative folded into the doubled-box symbol.
ScalarField heat_div(const VectorField& v, const Grid& g, double t);
ScalarField heat_perp_div(const VectorField& v, const Grid& g, double t);

// ============================================================
// Periodic spectral calculus on the N box (period 2L per axis)
// ============================================================
VectorField gradient(const ScalarField& f, const Grid& g);
ScalarField divergence(const VectorField& v, const Grid& g);
ScalarField perp_divergence(const VectorField& v, const Grid& g);

// Two-thirds rule: modes with 3|m| >= N on either axis are zeroed.
ScalarField dealias(const ScalarField& f, const Grid& g);

// Pointwise product truncated by the two-thirds rule.  The factors are NOT
// pre-truncated: a velocity field carries an O(1/r) far tail that is not
// periodic across the window seam, and truncating it first would ring
// Gibbs oscillations through the whole box.  The compact factor suppresses
// the seam instead, and whatever genuine content the product has beyond
// the kept band is discarded on output.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b, const Grid& g);

}  // namespace cns
