#pragma once

#include <vector>

namespace cns {

// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on the
// Legendre recurrence.  Deterministic to the last bit for fixed n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Quadrature for integrals over (0, t) against the Duhamel weight
// w(s) = s^(-a) (t-s)^(-b), 0 <= a, b < 1.  The interval is split into
// `panels` subintervals graded quadratically toward both endpoints; each
// panel carries the four Gauss-Legendre points and two weight sets:
//
//   integral w(s) g(s) ds   ~  sum weights[i]       * g(nodes[i])
//   integral F(s) ds        ~  sum plain_weights[i] * F(nodes[i])
//
// `weights` match the first four moments of the full weight per panel
// (endpoint moments by a binomial series about the singular point, interior
// ones by a fine Gauss rule on the analytic weight), so pure Beta-type
// integrals come out to roundoff at any panel count.  `plain_weights` are
// composite Gauss-Legendre: constants integrate exactly for every (a, b),
// and the grading resolves the endpoint boundary layers of the mollified
// Duhamel integrands.  The Duhamel driver uses the plain form.
struct ProductQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> plain_weights;
};
ProductQuadrature product_quadrature(double t, double a, double b, int panels);

// Same rule with a = b = gamma; gamma in [0, 1).  For gamma = 0 it reduces
// to composite Gauss on the graded panels.
ProductQuadrature graded_mesh(double t, int panels, double gamma);

// Time nodes T (k/M)^gamma, k = 1..M, clustered toward 0 for gamma > 1.
std::vector<double> graded_times(double T, int M, double gamma);

}  // namespace cns
