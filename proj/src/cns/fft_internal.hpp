#pragma once

// Shared FFTW plumbing for the translation units that work in spectral
// space.  Not installed; include only from src/cns.

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cns/field.hpp"

namespace cns::detail {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  double* r = nullptr;
  fftw_complex* c = nullptr;
};

inline std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

inline std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

// One plan pair per size, FFTW_ESTIMATE (deterministic, leaves the arrays
// alone), reused through the new-array interface.  Work buffers always come
// from fftw_malloc so their alignment matches the planning buffers.
inline PlanPair& plans(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PlanPair p;
  p.r = fftw_alloc_real(static_cast<size_t>(n) * n);
  p.c = fftw_alloc_complex(static_cast<size_t>(n) * (n / 2 + 1));
  p.fwd = fftw_plan_dft_r2c_2d(n, n, p.r, p.c, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_c2r_2d(n, n, p.c, p.r, FFTW_ESTIMATE);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

struct RealBuf {
  explicit RealBuf(size_t n) : p(fftw_alloc_real(n)) { std::memset(p, 0, n * sizeof(double)); }
  ~RealBuf() { fftw_free(p); }
  RealBuf(const RealBuf&) = delete;
  RealBuf& operator=(const RealBuf&) = delete;
  double* p;
};

struct CplxBuf {
  explicit CplxBuf(size_t n) : p(fftw_alloc_complex(n)) {}
  ~CplxBuf() { fftw_free(p); }
  CplxBuf(const CplxBuf&) = delete;
  CplxBuf& operator=(const CplxBuf&) = delete;
  fftw_complex* p;
};

inline void fft_fwd(int n, double* r, fftw_complex* c) {
  fftw_execute_dft_r2c(plans(n).fwd, r, c);
}

inline void fft_bwd(int n, fftw_complex* c, double* r) {
  fftw_execute_dft_c2r(plans(n).bwd, c, r);
}

inline int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

inline void pad_center(const ScalarField& f, int N, double* out) {
  const int M = 2 * N;
  for (int i = 0; i < N; ++i)
    std::memcpy(out + static_cast<size_t>(i + N / 2) * M + N / 2,
                f.data() + static_cast<size_t>(i) * N, N * sizeof(double));
}

inline ScalarField crop_center(const double* r, int N) {
  const int M = 2 * N;
  ScalarField out(N, N);
  for (int i = 0; i < N; ++i)
    std::memcpy(out.data() + static_cast<size_t>(i) * N,
                r + static_cast<size_t>(i + N / 2) * M + N / 2, N * sizeof(double));
  return out;
}

}  // namespace cns::detail
