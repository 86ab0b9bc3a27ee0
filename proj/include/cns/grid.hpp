#pragma once

#include <stdexcept>

namespace cns {

// Uniform N x N grid covering the centered square [-L, L)^2 with spacing
// h = 2L/N.  Fields are sampled at x_i = -L + i h, so the box is periodic
// with period 2L when treated spectrally.
struct Grid {
  double extent = 1.0;  // L
  int size = 0;         // N, even

  double h() const { return 2.0 * extent / size; }
  double coord(int i) const { return -extent + i * h(); }
  int wrap(int i) const {
    int r = i % size;
    return r < 0 ? r + size : r;
  }
  bool operator==(const Grid& o) const { return extent == o.extent && size == o.size; }
};

inline void check_grid(const Grid& g) {
  if (g.size < 8 || g.size % 2 != 0)
    throw std::invalid_argument("grid size must be even and at least 8");
  if (!(g.extent > 0.0))
    throw std::invalid_argument("grid extent must be positive");
}

}  // namespace cns
