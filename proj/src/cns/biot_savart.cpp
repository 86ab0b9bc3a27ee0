#include "cns/biot_savart.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <vector>

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

// Transformed kernel samples for one (N, L), built once.  Projection onto
// the divergence-free modes happens here, so every velocity the cache
// produces is solenoidal on the doubled box by construction.
struct KernelCache {
  std::vector<double> kx_re, kx_im, ky_re, ky_im;
};

std::map<std::pair<int, double>, std::unique_ptr<KernelCache>>& kernel_cache() {
  static std::map<std::pair<int, double>, std::unique_ptr<KernelCache>> cache;
  return cache;
}

std::mutex& kernel_mutex() {
  static std::mutex m;
  return m;
}

// sin(x)/x with the removable singularity filled in.
double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

const KernelCache& kernel_for(const Grid& g) {
  std::lock_guard<std::mutex> lock(kernel_mutex());
  auto key = std::make_pair(g.size, g.extent);
  auto& cache = kernel_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  const int N = g.size, M = 2 * N;
  const double h = g.h();
  const size_t spec = static_cast<size_t>(M) * (M / 2 + 1);
  auto entry = std::make_unique<KernelCache>();
  entry->kx_re.resize(spec);
  entry->kx_im.resize(spec);
  entry->ky_re.resize(spec);
  entry->ky_im.resize(spec);

  // S(x) = (2 pi)^-1 |x|^-2 (-x2, x1) sampled at every displacement the
  // window can produce; the h^2 of the Riemann sum rides along here.
  RealBuf r(static_cast<size_t>(M) * M);
  CplxBuf c(spec);
  for (int comp = 0; comp < 2; ++comp) {
    for (int i = 0; i < M; ++i) {
      const double dx = h * signed_mode(i, M);
      for (int j = 0; j < M; ++j) {
        const double dy = h * signed_mode(j, M);
        const double r2 = dx * dx + dy * dy;
        double s = 0.0;
        if (r2 > 0.0) s = (comp == 0 ? -dy : dx) / (2.0 * M_PI * r2);
        r.p[static_cast<size_t>(i) * M + j] = s * h * h;
      }
    }
    fft_fwd(M, r.p, c.p);
    auto& re = comp == 0 ? entry->kx_re : entry->ky_re;
    auto& im = comp == 0 ? entry->kx_im : entry->ky_im;
    for (size_t q = 0; q < spec; ++q) {
      re[q] = c.p[q][0];
      im[q] = c.p[q][1];
    }
  }

  // Divide out the Riemann-sum box response (sinc(k h / 2) per axis), which
  // is the leading quadrature error of the sampled convolution on smooth
  // data, then remove the curl-free residue of the sampling:
  // shat -= m (m . shat)/|m|^2.
  for (int i0 = 0; i0 < M; ++i0) {
    const double m0 = signed_mode(i0, M);
    for (int i1 = 0; i1 <= M / 2; ++i1) {
      const double m1 = i1;
      const size_t q = static_cast<size_t>(i0) * (M / 2 + 1) + i1;
      const double box = sinc(M_PI * m0 / M) * sinc(M_PI * m1 / M);
      entry->kx_re[q] /= box;
      entry->kx_im[q] /= box;
      entry->ky_re[q] /= box;
      entry->ky_im[q] /= box;
      const double mm = m0 * m0 + m1 * m1;
      if (mm == 0.0) continue;
      const double dre = (m0 * entry->kx_re[q] + m1 * entry->ky_re[q]) / mm;
      const double dim = (m0 * entry->kx_im[q] + m1 * entry->ky_im[q]) / mm;
      entry->kx_re[q] -= m0 * dre;
      entry->kx_im[q] -= m0 * dim;
      entry->ky_re[q] -= m1 * dre;
      entry->ky_im[q] -= m1 * dim;
    }
  }

  auto [pos, ok] = cache.emplace(key, std::move(entry));
  (void)ok;
  return *pos->second;
}

// Doubled-box spectrum of the padded vorticity times the kernel transform.
void velocity_spectrum(const ScalarField& zeta, const Grid& g, CplxBuf& ux, CplxBuf& uy) {
  const int N = g.size, M = 2 * N;
  const KernelCache& K = kernel_for(g);
  RealBuf r(static_cast<size_t>(M) * M);
  CplxBuf zc(static_cast<size_t>(M) * (M / 2 + 1));
  pad_center(zeta, N, r.p);
  fft_fwd(M, r.p, zc.p);

  const size_t spec = static_cast<size_t>(M) * (M / 2 + 1);
  const double norm = 1.0 / (static_cast<double>(M) * M);
  for (size_t q = 0; q < spec; ++q) {
    const double zr = zc.p[q][0] * norm, zi = zc.p[q][1] * norm;
    ux.p[q][0] = K.kx_re[q] * zr - K.kx_im[q] * zi;
    ux.p[q][1] = K.kx_re[q] * zi + K.kx_im[q] * zr;
    uy.p[q][0] = K.ky_re[q] * zr - K.ky_im[q] * zi;
    uy.p[q][1] = K.ky_re[q] * zi + K.ky_im[q] * zr;
  }
}

}  // namespace

VectorField velocity_from_vorticity(const ScalarField& zeta, const Grid& g) {
  check_grid(g);
  check_field(zeta, g);
  const int N = g.size, M = 2 * N;
  CplxBuf ux(static_cast<size_t>(M) * (M / 2 + 1));
  CplxBuf uy(static_cast<size_t>(M) * (M / 2 + 1));
  velocity_spectrum(zeta, g, ux, uy);
  RealBuf r(static_cast<size_t>(M) * M);
  VectorField out;
  fft_bwd(M, ux.p, r.p);
  out.x = crop_center(r.p, N);
  fft_bwd(M, uy.p, r.p);
  out.y = crop_center(r.p, N);
  return out;
}

double divergence_defect(const ScalarField& zeta, const Grid& g) {
  check_grid(g);
  check_field(zeta, g);
  const int N = g.size, M = 2 * N;
  CplxBuf ux(static_cast<size_t>(M) * (M / 2 + 1));
  CplxBuf uy(static_cast<size_t>(M) * (M / 2 + 1));
  velocity_spectrum(zeta, g, ux, uy);

  const double kk = M_PI / (2.0 * g.extent);
  for (int i0 = 0; i0 < M; ++i0) {
    const int m0 = signed_mode(i0, M);
    const double k0 = (m0 == M / 2) ? 0.0 : kk * m0;
    for (int i1 = 0; i1 <= M / 2; ++i1) {
      const double k1 = (i1 == M / 2) ? 0.0 : kk * i1;
      const size_t q = static_cast<size_t>(i0) * (M / 2 + 1) + i1;
      const double xr = ux.p[q][0], xi = ux.p[q][1];
      const double yr = uy.p[q][0], yi = uy.p[q][1];
      ux.p[q][0] = -(k0 * xi + k1 * yi);
      ux.p[q][1] = k0 * xr + k1 * yr;
    }
  }
  RealBuf r(static_cast<size_t>(M) * M);
  fft_bwd(M, ux.p, r.p);
  double worst = 0.0;
  for (size_t q = 0; q < static_cast<size_t>(M) * M; ++q)
    worst = std::max(worst, std::abs(r.p[q]));
  return worst;
}

}  // namespace cns
