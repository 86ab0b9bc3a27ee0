#pragma once

#include "cns/field.hpp"

namespace cns {

// Free-space Biot-Savart on the doubled box.  The kernel
//   S(x) = (2 pi)^-1 |x|^-2 (-x2, x1),  S(0) = 0,
// is sampled on the 2N x 2N displacement lattice (so every pairwise
// displacement inside the window is represented without wrap), its transform
// is projected mode by mode onto divergence-free vectors, and u = S * zeta
// is read back from the original window.  The projection removes the
// curl-free part the pointwise sampling introduces, which makes the
// discrete field solenoidal on the doubled box to roundoff.
VectorField velocity_from_vorticity(const ScalarField& zeta, const Grid& g);

// Sup of |div u| measured spectrally on the doubled-box representation,
// before cropping.  This is the domain on which the convolution is defined;
// the cropped window itself is not periodic for nonzero circulation.
double divergence_defect(const ScalarField& zeta, const Grid& g);

}  // namespace cns
