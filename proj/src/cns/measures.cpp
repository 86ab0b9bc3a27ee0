#include "cns/measures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cns/field_io.hpp"
#include "cns/norms.hpp"
#include "cns/quadrature.hpp"
#include "cns/spectral.hpp"

namespace cns {

double filament_length(const Filament& f) {
  if (f.vertices.size() < 2) throw std::invalid_argument("filament needs at least 2 vertices");
  double len = 0.0;
  for (size_t k = 1; k < f.vertices.size(); ++k) len += (f.vertices[k] - f.vertices[k - 1]).norm();
  return len;
}

double total_variation(const RadonMeasureSpec& mu) {
  double tv = 0.0;
  for (const auto& a : mu.atoms) tv += std::abs(a.w);
  for (const auto& f : mu.filaments) tv += std::abs(f.density) * filament_length(f);
  for (const auto& gb : mu.gaussians) tv += std::abs(gb.mass);
  if (!mu.density_file.empty()) {
    LoadedField lf = load_field(mu.density_file);
    tv += lp_norm(lf.f, 1.0, lf.grid.h());
  }
  return tv;
}

double atomic_tv(const RadonMeasureSpec& mu) {
  double tv = 0.0;
  for (const auto& a : mu.atoms) tv += std::abs(a.w);
  return tv;
}

double mollifier_variance(int j) {
  if (j < 1) throw std::invalid_argument("mollification level must be >= 1");
  return 0.5 / (static_cast<double>(j) * j);
}

int mollification_level(const Grid& g) {
  check_grid(g);
  const int j = static_cast<int>(std::floor(1.0 / (4.0 * g.h())));
  if (j < 1) throw std::invalid_argument("grid too coarse to resolve any mollifier");
  return j;
}

namespace {

// Separable accumulation of w * (j^2/pi) exp(-j^2 |x - p|^2) onto the field.
void add_gaussian_point(ScalarField& f, const Grid& g, const Eigen::Vector2d& p, double w,
                        double inv_two_var) {
  const int N = g.size;
  Eigen::ArrayXd ex(N), ey(N);
  for (int i = 0; i < N; ++i) {
    const double dx = g.coord(i) - p.x();
    const double dy = g.coord(i) - p.y();
    ex[i] = std::exp(-dx * dx * inv_two_var);
    ey[i] = std::exp(-dy * dy * inv_two_var);
  }
  const double amp = w * inv_two_var / M_PI;
  f += amp * (ex.matrix() * ey.matrix().transpose()).array();
}

}  // namespace

ScalarField mollify(const RadonMeasureSpec& mu, const Grid& g, int j) {
  check_grid(g);
  if (j < 1) throw std::invalid_argument("mollification level must be >= 1");
  const double h = g.h();
  if (1.0 / j < 2.0 * h)
    throw std::invalid_argument("mollifier too narrow for this grid (need 1/j >= 2h)");

  const double s = mollifier_variance(j);
  ScalarField f = zero_field(g);

  for (const auto& a : mu.atoms) add_gaussian_point(f, g, a.x, a.w, 0.5 / s);

  for (const auto& gb : mu.gaussians) {
    if (!(gb.variance > 0.0)) throw std::invalid_argument("gaussian part needs positive variance");
    add_gaussian_point(f, g, gb.center, gb.mass, 0.5 / (gb.variance + s));
  }

  for (const auto& fil : mu.filaments) {
    for (size_t k = 1; k < fil.vertices.size(); ++k) {
      const Eigen::Vector2d a = fil.vertices[k - 1], b = fil.vertices[k];
      const double len = (b - a).norm();
      if (len == 0.0) continue;
      const int nseg = std::max(1, static_cast<int>(std::ceil(len / (0.5 * h))));
      const double dl = len / nseg;
      for (int q = 0; q < nseg; ++q) {
        const Eigen::Vector2d p = a + (b - a) * ((q + 0.5) / nseg);
        add_gaussian_point(f, g, p, fil.density * dl, 0.5 / s);
      }
    }
  }

  if (!mu.density_file.empty()) {
    LoadedField lf = load_field(mu.density_file);
    if (!(lf.grid == g)) throw std::invalid_argument("density part lives on a different grid");
    f += heat_propagate(lf.f, g, 0.5 * s);
  }

  const double tv = total_variation(mu);
  if (lp_norm(f, 1.0, h) > tv + 1e-6)
    throw std::runtime_error("mollified mass exceeds the total variation of the measure");
  return f;
}

double weak_pairing(const ScalarField& f, const ScalarField& psi, double h) {
  if (f.rows() != psi.rows() || f.cols() != psi.cols())
    throw std::invalid_argument("weak_pairing needs matching shapes");
  return h * h * (f * psi).sum();
}

double pair_measure(const RadonMeasureSpec& mu,
                    const std::function<double(double, double)>& psi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("pair_measure needs a positive step");
  double acc = 0.0;
  for (const auto& a : mu.atoms) acc += a.w * psi(a.x.x(), a.x.y());

  for (const auto& fil : mu.filaments) {
    for (size_t k = 1; k < fil.vertices.size(); ++k) {
      const Eigen::Vector2d a = fil.vertices[k - 1], b = fil.vertices[k];
      const double len = (b - a).norm();
      if (len == 0.0) continue;
      const int nseg = std::max(1, static_cast<int>(std::ceil(len / step)));
      const double dl = len / nseg;
      for (int q = 0; q < nseg; ++q) {
        const Eigen::Vector2d p = a + (b - a) * ((q + 0.5) / nseg);
        acc += fil.density * dl * psi(p.x(), p.y());
      }
    }
  }

  if (!mu.gaussians.empty()) {
    const GaussRule gl = gauss_legendre(32);
    for (const auto& gb : mu.gaussians) {
      const double sig = std::sqrt(gb.variance);
      const double R = 8.0 * sig;
      const double norm = 1.0 / (2.0 * M_PI * gb.variance);
      double blob = 0.0;
      for (size_t ix = 0; ix < gl.nodes.size(); ++ix)
        for (size_t iy = 0; iy < gl.nodes.size(); ++iy) {
          const double dx = R * gl.nodes[ix], dy = R * gl.nodes[iy];
          blob += gl.weights[ix] * gl.weights[iy] *
                  std::exp(-(dx * dx + dy * dy) / (2.0 * gb.variance)) *
                  psi(gb.center.x() + dx, gb.center.y() + dy);
        }
      acc += gb.mass * norm * blob * R * R;
    }
  }

  if (!mu.density_file.empty()) {
    LoadedField lf = load_field(mu.density_file);
    const double h = lf.grid.h();
    double dens = 0.0;
    for (int i = 0; i < lf.grid.size; ++i)
      for (int jj = 0; jj < lf.grid.size; ++jj)
        dens += lf.f(i, jj) * psi(lf.grid.coord(i), lf.grid.coord(jj));
    acc += dens * h * h;
  }
  return acc;
}

namespace {

Eigen::Vector2d parse_vec2(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

RadonMeasureSpec measure_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RadonMeasureSpec mu;
  for (const auto& a : j.value("atoms", nlohmann::json::array()))
    mu.atoms.push_back({parse_vec2(a.at("x")), a.at("w").get<double>()});
  for (const auto& f : j.value("filaments", nlohmann::json::array())) {
    Filament fil;
    for (const auto& v : f.at("vertices")) fil.vertices.push_back(parse_vec2(v));
    fil.density = f.at("density").get<double>();
    if (fil.vertices.size() < 2) throw std::invalid_argument("filament needs at least 2 vertices");
    mu.filaments.push_back(std::move(fil));
  }
  for (const auto& gb : j.value("gaussians", nlohmann::json::array()))
    mu.gaussians.push_back(
        {parse_vec2(gb.at("center")), gb.at("mass").get<double>(), gb.at("variance").get<double>()});
  mu.density_file = j.value("density_file", std::string{});
  return mu;
}

RadonMeasureSpec measure_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return measure_from_json_text(ss.str());
}

std::string measure_to_json_text(const RadonMeasureSpec& mu) {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : mu.atoms) j["atoms"].push_back({{"x", {a.x.x(), a.x.y()}}, {"w", a.w}});
  j["filaments"] = nlohmann::json::array();
  for (const auto& f : mu.filaments) {
    nlohmann::json vf = nlohmann::json::array();
    for (const auto& v : f.vertices) vf.push_back({v.x(), v.y()});
    j["filaments"].push_back({{"vertices", vf}, {"density", f.density}});
  }
  j["gaussians"] = nlohmann::json::array();
  for (const auto& gb : mu.gaussians)
    j["gaussians"].push_back(
        {{"center", {gb.center.x(), gb.center.y()}}, {"mass", gb.mass}, {"variance", gb.variance}});
  if (!mu.density_file.empty()) j["density_file"] = mu.density_file;
  return j.dump(2);
}

}  // namespace cns
