#pragma once

#include <Eigen/Core>

#include "cns/grid.hpp"

namespace cns {

// Row-major so the complex-to-real transforms see contiguous rows.
// Convention: f(i, j) = f(x = grid.coord(i), y = grid.coord(j)), i.e. the
// first index walks the x axis.
using ScalarField = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct VectorField {
  ScalarField x;
  ScalarField y;
};

inline ScalarField zero_field(const Grid& g) { return ScalarField::Zero(g.size, g.size); }

inline VectorField zero_vector_field(const Grid& g) { return {zero_field(g), zero_field(g)}; }

inline void check_field(const ScalarField& f, const Grid& g) {
  if (f.rows() != g.size || f.cols() != g.size)
    throw std::invalid_argument("field shape does not match grid");
}

}  // namespace cns
