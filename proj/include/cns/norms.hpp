#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cns/field.hpp"

namespace cns {

// Lebesgue norms as plain Riemann sums, ||f||_p^p = h^2 sum |f|^p.
// p = infinity is accepted and returns the grid sup.
inline double lp_norm(const ScalarField& f, double p, double h) {
  if (std::isinf(p)) return f.size() ? f.abs().maxCoeff() : 0.0;
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  if (p == 1.0) return h * h * f.abs().sum();
  if (p == 2.0) return std::sqrt(h * h * f.square().sum());
  return std::pow(h * h * f.abs().pow(p).sum(), 1.0 / p);
}

inline double linf_norm(const ScalarField& f) {
  return lp_norm(f, std::numeric_limits<double>::infinity(), 0.0);
}

inline double mass(const ScalarField& f, double h) { return h * h * f.sum(); }

inline double rel_l2_error(const ScalarField& a, const ScalarField& ref, double h) {
  double d = lp_norm((a - ref).eval(), 2.0, h);
  double r = lp_norm(ref, 2.0, h);
  return r > 0.0 ? d / r : d;
}

}  // namespace cns
