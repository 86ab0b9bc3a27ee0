#include "cns/spectral.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fft_internal.hpp"

namespace cns {

using detail::CplxBuf;
using detail::RealBuf;
using detail::crop_center;
using detail::fft_bwd;
using detail::fft_fwd;
using detail::pad_center;
using detail::signed_mode;

namespace {

void check_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat time must be nonnegative");
}

}  // namespace

ScalarField heat_propagate(const ScalarField& f, const Grid& g, double t) {
  check_grid(g);
  check_field(f, g);
  check_time(t);
  if (t == 0.0) return f;

  const int N = g.size, M = 2 * N;
  const double kk = M_PI / (2.0 * g.extent);  // doubled box has period 4L
  RealBuf r(static_cast<size_t>(M) * M);
  CplxBuf c(static_cast<size_t>(M) * (M / 2 + 1));
  pad_center(f, N, r.p);
  fft_fwd(M, r.p, c.p);

  const double norm = 1.0 / (static_cast<double>(M) * M);
  for (int i0 = 0; i0 < M; ++i0) {
    const double k0 = kk * signed_mode(i0, M);
    for (int i1 = 0; i1 <= M / 2; ++i1) {
      const double k1 = kk * i1;
      const double sym = std::exp(-(k0 * k0 + k1 * k1) * t) * norm;
      fftw_complex& z = c.p[static_cast<size_t>(i0) * (M / 2 + 1) + i1];
      z[0] *= sym;
      z[1] *= sym;
    }
  }
  fft_bwd(M, c.p, r.p);
  return crop_center(r.p, N);
}

namespace {

// div or perp-div of e^{tD} v on the doubled box; the derivative multiplier
// is zeroed at the Nyquist modes, the Gaussian symbol is not.
ScalarField heat_first_order(const VectorField& v, const Grid& g, double t, bool perp) {
  check_grid(g);
  check_field(v.x, g);
  check_field(v.y, g);
  check_time(t);

  const int N = g.size, M = 2 * N;
  const double kk = M_PI / (2.0 * g.extent);
  RealBuf r(static_cast<size_t>(M) * M);
  CplxBuf cx(static_cast<size_t>(M) * (M / 2 + 1));
  CplxBuf cy(static_cast<size_t>(M) * (M / 2 + 1));

  pad_center(v.x, N, r.p);
  fft_fwd(M, r.p, cx.p);
  std::memset(r.p, 0, static_cast<size_t>(M) * M * sizeof(double));
  pad_center(v.y, N, r.p);
  fft_fwd(M, r.p, cy.p);

  const double norm = 1.0 / (static_cast<double>(M) * M);
  for (int i0 = 0; i0 < M; ++i0) {
    const int m0 = signed_mode(i0, M);
    const double f0 = kk * m0;
    const double k0 = (m0 == M / 2) ? 0.0 : f0;
    for (int i1 = 0; i1 <= M / 2; ++i1) {
      const double f1 = kk * i1;
      const double k1 = (i1 == M / 2) ? 0.0 : f1;
      const double sym = std::exp(-(f0 * f0 + f1 * f1) * t) * norm;
      const size_t idx = static_cast<size_t>(i0) * (M / 2 + 1) + i1;
      const double axr = cx.p[idx][0], axi = cx.p[idx][1];
      const double ayr = cy.p[idx][0], ayi = cy.p[idx][1];
      double re, im;
      if (!perp) {  // i k0 vx + i k1 vy
        re = -(k0 * axi + k1 * ayi);
        im = k0 * axr + k1 * ayr;
      } else {  // i k0 vy - i k1 vx
        re = -(k0 * ayi - k1 * axi);
        im = k0 * ayr - k1 * axr;
      }
      cx.p[idx][0] = re * sym;
      cx.p[idx][1] = im * sym;
    }
  }
  fft_bwd(M, cx.p, r.p);
  return crop_center(r.p, N);
}

}  // namespace

ScalarField heat_div(const VectorField& v, const Grid& g, double t) {
  return heat_first_order(v, g, t, false);
}

ScalarField heat_perp_div(const VectorField& v, const Grid& g, double t) {
  return heat_first_order(v, g, t, true);
}

VectorField gradient(const ScalarField& f, const Grid& g) {
  check_grid(g);
  check_field(f, g);
  const int N = g.size;
  const double kk = M_PI / g.extent;  // period 2L
  RealBuf r(static_cast<size_t>(N) * N);
  CplxBuf c(static_cast<size_t>(N) * (N / 2 + 1));
  CplxBuf d(static_cast<size_t>(N) * (N / 2 + 1));
  std::memcpy(r.p, f.data(), static_cast<size_t>(N) * N * sizeof(double));
  fft_fwd(N, r.p, c.p);

  const double norm = 1.0 / (static_cast<double>(N) * N);
  VectorField out;
  for (int axis = 0; axis < 2; ++axis) {
    for (int i0 = 0; i0 < N; ++i0) {
      const int m0 = signed_mode(i0, N);
      for (int i1 = 0; i1 <= N / 2; ++i1) {
        const int m = axis == 0 ? m0 : i1;
        const double k = (std::abs(m) == N / 2) ? 0.0 : kk * m;
        const size_t idx = static_cast<size_t>(i0) * (N / 2 + 1) + i1;
        d.p[idx][0] = -k * c.p[idx][1] * norm;
        d.p[idx][1] = k * c.p[idx][0] * norm;
      }
    }
    fft_bwd(N, d.p, r.p);
    ScalarField comp(N, N);
    std::memcpy(comp.data(), r.p, static_cast<size_t>(N) * N * sizeof(double));
    (axis == 0 ? out.x : out.y) = std::move(comp);
  }
  return out;
}

namespace {

ScalarField first_order_periodic(const VectorField& v, const Grid& g, bool perp) {
  check_grid(g);
  check_field(v.x, g);
  check_field(v.y, g);
  const int N = g.size;
  const double kk = M_PI / g.extent;
  RealBuf r(static_cast<size_t>(N) * N);
  CplxBuf cx(static_cast<size_t>(N) * (N / 2 + 1));
  CplxBuf cy(static_cast<size_t>(N) * (N / 2 + 1));
  std::memcpy(r.p, v.x.data(), static_cast<size_t>(N) * N * sizeof(double));
  fft_fwd(N, r.p, cx.p);
  std::memcpy(r.p, v.y.data(), static_cast<size_t>(N) * N * sizeof(double));
  fft_fwd(N, r.p, cy.p);

  const double norm = 1.0 / (static_cast<double>(N) * N);
  for (int i0 = 0; i0 < N; ++i0) {
    const int m0 = signed_mode(i0, N);
    const double k0 = (std::abs(m0) == N / 2) ? 0.0 : kk * m0;
    for (int i1 = 0; i1 <= N / 2; ++i1) {
      const double k1 = (i1 == N / 2) ? 0.0 : kk * i1;
      const size_t idx = static_cast<size_t>(i0) * (N / 2 + 1) + i1;
      const double axr = cx.p[idx][0], axi = cx.p[idx][1];
      const double ayr = cy.p[idx][0], ayi = cy.p[idx][1];
      double re, im;
      if (!perp) {
        re = -(k0 * axi + k1 * ayi);
        im = k0 * axr + k1 * ayr;
      } else {
        re = -(k0 * ayi - k1 * axi);
        im = k0 * ayr - k1 * axr;
      }
      cx.p[idx][0] = re * norm;
      cx.p[idx][1] = im * norm;
    }
  }
  fft_bwd(N, cx.p, r.p);
  ScalarField out(N, N);
  std::memcpy(out.data(), r.p, static_cast<size_t>(N) * N * sizeof(double));
  return out;
}

}  // namespace

ScalarField divergence(const VectorField& v, const Grid& g) {
  return first_order_periodic(v, g, false);
}

ScalarField perp_divergence(const VectorField& v, const Grid& g) {
  return first_order_periodic(v, g, true);
}

ScalarField dealias(const ScalarField& f, const Grid& g) {
  check_grid(g);
  check_field(f, g);
  const int N = g.size;
  RealBuf r(static_cast<size_t>(N) * N);
  CplxBuf c(static_cast<size_t>(N) * (N / 2 + 1));
  std::memcpy(r.p, f.data(), static_cast<size_t>(N) * N * sizeof(double));
  fft_fwd(N, r.p, c.p);

  const double norm = 1.0 / (static_cast<double>(N) * N);
  for (int i0 = 0; i0 < N; ++i0) {
    const int m0 = signed_mode(i0, N);
    for (int i1 = 0; i1 <= N / 2; ++i1) {
      const size_t idx = static_cast<size_t>(i0) * (N / 2 + 1) + i1;
      const bool keep = 3 * std::abs(m0) < N && 3 * i1 < N;
      const double s = keep ? norm : 0.0;
      c.p[idx][0] *= s;
      c.p[idx][1] *= s;
    }
  }
  fft_bwd(N, c.p, r.p);
  ScalarField out(N, N);
  std::memcpy(out.data(), r.p, static_cast<size_t>(N) * N * sizeof(double));
  return out;
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b, const Grid& g) {
  return dealias((a * b).eval(), g);
}

}  // namespace cns
