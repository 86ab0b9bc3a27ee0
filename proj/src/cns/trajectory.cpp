#include "cns/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/norms.hpp"
#include "cns/spectral.hpp"

namespace cns {

void check_trajectory(const Trajectory& tr) {
  check_grid(tr.grid);
  const size_t M = tr.times.size();
  if (M < 8) throw std::invalid_argument("trajectory needs at least 8 nodes");
  if (tr.n.size() != M || tr.c.size() != M || tr.zeta.size() != M || tr.u.size() != M)
    throw std::invalid_argument("trajectory component counts disagree");
  double prev = 0.0;
  for (double t : tr.times) {
    if (!(t > prev)) throw std::invalid_argument("trajectory times must be positive and increasing");
    prev = t;
  }
}

namespace {

ScalarField blend(const ScalarField& a, const ScalarField& b, double lam) {
  return ((1.0 - lam) * a + lam * b).eval();
}

VectorField blend(const VectorField& a, const VectorField& b, double lam) {
  return {blend(a.x, b.x, lam), blend(a.y, b.y, lam)};
}

}  // namespace

Sample sample_trajectory(const Trajectory& tr, double s) {
  if (!(s > 0.0 && s <= tr.times.back() * (1.0 + 1e-12)))
    throw std::invalid_argument("sample time outside trajectory range");
  const auto& ts = tr.times;

  if (s <= ts.front()) {
    const double lam = s / ts.front();
    return {blend(tr.n0, tr.n.front(), lam), blend(tr.c0, tr.c.front(), lam),
            blend(tr.zeta0, tr.zeta.front(), lam), blend(tr.u0, tr.u.front(), lam)};
  }

  auto hi = std::lower_bound(ts.begin(), ts.end(), s);
  if (hi == ts.end()) --hi;
  const size_t k1 = static_cast<size_t>(hi - ts.begin());
  if (ts[k1] == s)
    return {tr.n[k1], tr.c[k1], tr.zeta[k1], tr.u[k1]};
  const size_t k0 = k1 - 1;
  const double lam = (std::log(s) - std::log(ts[k0])) / (std::log(ts[k1]) - std::log(ts[k0]));
  return {blend(tr.n[k0], tr.n[k1], lam), blend(tr.c[k0], tr.c[k1], lam),
          blend(tr.zeta[k0], tr.zeta[k1], lam), blend(tr.u[k0], tr.u[k1], lam)};
}

namespace {

KatoNorms kato_impl(const Trajectory& a, const Trajectory* b, const IndexSet& idx) {
  check_trajectory(a);
  if (b) {
    check_trajectory(*b);
    if (a.times != b->times || !(a.grid == b->grid))
      throw std::invalid_argument("trajectories do not share a node set");
  }
  const double h = a.grid.h();
  KatoNorms out;
  for (size_t k = 0; k < a.times.size(); ++k) {
    const double t = a.times[k];
    ScalarField n = b ? (a.n[k] - b->n[k]).eval() : a.n[k];
    ScalarField c = b ? (a.c[k] - b->c[k]).eval() : a.c[k];
    ScalarField z = b ? (a.zeta[k] - b->zeta[k]).eval() : a.zeta[k];
    out.n = std::max(out.n, std::pow(t, idx.alpha1) * lp_norm(n, idx.p1, h));
    out.c_sup = std::max(out.c_sup, linf_norm(c));
    VectorField gc = gradient(c, a.grid);
    const ScalarField gmag = (gc.x.square() + gc.y.square()).sqrt().eval();
    out.c_grad = std::max(out.c_grad, std::pow(t, idx.alpha2) * lp_norm(gmag, idx.p2, h));
    out.zeta = std::max(out.zeta, std::pow(t, idx.alpha3) * lp_norm(z, idx.p3, h));
  }
  return out;
}

}  // namespace

KatoNorms kato_norms(const Trajectory& tr, const IndexSet& idx) { return kato_impl(tr, nullptr, idx); }

KatoNorms kato_norms_diff(const Trajectory& a, const Trajectory& b, const IndexSet& idx) {
  return kato_impl(a, &b, idx);
}

}  // namespace cns
