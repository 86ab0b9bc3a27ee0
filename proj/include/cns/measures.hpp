#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cns/field.hpp"

namespace cns {

// Finite Radon measure given as atoms + polyline filaments + Gaussian blobs
// + an optional gridded density.  Everything is signed; total variation is
// the sum of the absolute parts.
struct Atom {
  Eigen::Vector2d x;
  double w = 0.0;
};

struct Filament {
  std::vector<Eigen::Vector2d> vertices;  // open polyline, >= 2 vertices
  double density = 0.0;                   // mass per unit length
};

struct GaussianBlob {
  Eigen::Vector2d center;
  double mass = 0.0;
  double variance = 0.0;  // per-axis variance of the normalized profile
};

struct RadonMeasureSpec {
  std::vector<Atom> atoms;
  std::vector<Filament> filaments;
  std::vector<GaussianBlob> gaussians;
  std::string density_file;  // optional field dump base path
};

double filament_length(const Filament& f);
double total_variation(const RadonMeasureSpec& mu);
double atomic_tv(const RadonMeasureSpec& mu);

// Mollifier scale: level j uses phi_j(x) = j^2 phi(jx), phi the unit
// Gaussian pi^-1 exp(-|x|^2), so phi_j has per-axis variance 1/(2 j^2).
double mollifier_variance(int j);

// Finest level the grid resolves: largest j with 1/j >= 4h.
int mollification_level(const Grid& g);

// mu * phi_j sampled on the grid.  Requires 1/j >= 2h; throws otherwise.
ScalarField mollify(const RadonMeasureSpec& mu, const Grid& g, int j);

// Gridded pairing <f, psi> = h^2 sum f psi.
double weak_pairing(const ScalarField& f, const ScalarField& psi, double h);

// Exact pairing of the measure with a test function.  Atoms and blob
// centers pair pointwise; filaments integrate psi along the line with
// midpoint steps no longer than `step`; a gridded density part needs the
// grid it lives on and pairs by Riemann sum.
double pair_measure(const RadonMeasureSpec& mu,
                    const std::function<double(double, double)>& psi, double step);

RadonMeasureSpec measure_from_json_text(const std::string& text);
RadonMeasureSpec measure_from_json_file(const std::string& path);
std::string measure_to_json_text(const RadonMeasureSpec& mu);

}  // namespace cns
