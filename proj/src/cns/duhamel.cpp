#include "cns/duhamel.hpp"

#include <stdexcept>

#include "cns/quadrature.hpp"
#include "cns/spectral.hpp"

namespace cns {

ScalarField duhamel_apply(OpId op, const Trajectory& A, const Trajectory& B, double t,
                          const IndexSet& idx, int panels, const VectorField* grad_phi) {
  check_trajectory(A);
  if (!(t > 0.0) || t > A.times.back() * (1.0 + 1e-12))
    throw std::invalid_argument("duhamel_apply time outside trajectory range");
  if (op == OpId::L13 && !grad_phi)
    throw std::invalid_argument("L13 needs the potential gradient");

  const Grid& g = A.grid;
  const OpExponents ex = op_exponents(op, idx);
  const ProductQuadrature q = product_quadrature(t, ex.a, ex.b, panels);

  ScalarField acc = zero_field(g);
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double s = q.nodes[i];
    const double w = q.plain_weights[i];
    if (w == 0.0) continue;
    const Sample sa = sample_trajectory(A, s);

    ScalarField term;
    switch (op) {
      case OpId::B112: {
        const Sample sb = sample_trajectory(B, s);
        const VectorField gc = gradient(sb.c, g);
        VectorField v{dealiased_product(sa.n, gc.x, g), dealiased_product(sa.n, gc.y, g)};
        term = heat_div(v, g, t - s);
        break;
      }
      case OpId::B113: {
        const Sample sb = sample_trajectory(B, s);
        VectorField v{dealiased_product(sa.n, sb.u.x, g), dealiased_product(sa.n, sb.u.y, g)};
        term = heat_div(v, g, t - s);
        break;
      }
      case OpId::B223: {
        const Sample sb = sample_trajectory(B, s);
        const VectorField gc = gradient(sa.c, g);
        term = heat_propagate(
            (dealiased_product(sb.u.x, gc.x, g) + dealiased_product(sb.u.y, gc.y, g)).eval(), g,
            t - s);
        break;
      }
      case OpId::B212: {
        const Sample sb = sample_trajectory(B, s);
        term = heat_propagate(dealiased_product(sa.n, sb.c, g), g, t - s);
        break;
      }
      case OpId::B333: {
        const Sample sb = sample_trajectory(B, s);
        VectorField v{dealiased_product(sa.zeta, sb.u.x, g), dealiased_product(sa.zeta, sb.u.y, g)};
        term = heat_div(v, g, t - s);
        break;
      }
      case OpId::L13: {
        VectorField v{dealiased_product(sa.n, grad_phi->x, g),
                      dealiased_product(sa.n, grad_phi->y, g)};
        term = heat_perp_div(v, g, t - s);
        break;
      }
      default:
        throw std::logic_error("unknown operator");
    }
    acc += w * term;
  }
  return acc;
}

}  // namespace cns
