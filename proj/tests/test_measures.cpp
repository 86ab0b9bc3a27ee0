#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "cns/field_io.hpp"
#include "cns/measures.hpp"
#include "cns/norms.hpp"
#include "cns/spectral.hpp"
#include "oracles.hpp"

using namespace cns;

namespace {
const Grid g{4.0, 128};

RadonMeasureSpec unit_atom() {
  RadonMeasureSpec mu;
  mu.atoms.push_back({{0.0, 0.0}, 1.0});
  return mu;
}
}  // namespace

TEST_CASE("total variation bookkeeping") {
  RadonMeasureSpec mu;
  mu.atoms.push_back({{0.0, 0.0}, 3.0});
  mu.atoms.push_back({{0.5, -0.25}, -4.0});
  CHECK(total_variation(mu) == 7.0);
  CHECK(atomic_tv(mu) == 7.0);

  RadonMeasureSpec fil;
  fil.filaments.push_back({{{-0.75, 0.0}, {0.75, 0.0}}, 2.0});
  CHECK(filament_length(fil.filaments[0]) == doctest::Approx(1.5));
  CHECK(total_variation(fil) == doctest::Approx(3.0));
  CHECK(atomic_tv(fil) == 0.0);

  // atom + gridded density of L1 mass 0.5
  dump_field("tv_density", oracle::gaussian(g, 0.5, 0.05), g, 0.0, "density");
  RadonMeasureSpec mixed = unit_atom();
  mixed.density_file = "tv_density";
  CHECK(total_variation(mixed) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(atomic_tv(mixed) == 1.0);
  std::remove("tv_density.f64");
  std::remove("tv_density.json");
}

TEST_CASE("mollifier scales") {
  CHECK(mollifier_variance(1) == 0.5);
  CHECK(mollifier_variance(4) == doctest::Approx(0.03125));
  CHECK(mollification_level(g) == 4);           // h = 1/16
  CHECK(mollification_level(Grid{4.0, 256}) == 8);
  CHECK_THROWS(mollify(unit_atom(), g, 9));     // 1/9 < 2h
  CHECK_THROWS(mollifier_variance(0));
}

TEST_CASE("mollified atom: unit mass, centered peak, Gaussian shape") {
  const int j = 4;
  const ScalarField f = mollify(unit_atom(), g, j);
  CHECK(lp_norm(f, 1.0, g.h()) == doctest::Approx(1.0).epsilon(1e-6));
  int pi = 0, pj = 0;
  f.maxCoeff(&pi, &pj);
  CHECK(g.coord(pi) == 0.0);
  CHECK(g.coord(pj) == 0.0);
  const ScalarField ref = oracle::gaussian(g, 1.0, mollifier_variance(j));
  CHECK(rel_l2_error(f, ref, g.h()) < 1e-12);
}

TEST_CASE("odd atom pair mollifies to an odd field") {
  RadonMeasureSpec mu;
  mu.atoms.push_back({{0.5, 0.0}, 1.0});
  mu.atoms.push_back({{-0.5, 0.0}, -1.0});
  const ScalarField f = mollify(mu, g, 4);
  CHECK(std::abs(mass(f, g.h())) < 1e-8);
}

TEST_CASE("filament mollification against a fine arclength oracle") {
  RadonMeasureSpec mu;
  mu.filaments.push_back({{{-0.75, 0.0}, {0.75, 0.0}}, 1.0});
  const int j = 4;
  const ScalarField f = mollify(mu, g, j);
  CHECK(lp_norm(f, 1.0, g.h()) == doctest::Approx(1.5).epsilon(1e-4));

  // direct evaluation with a 10x finer arclength step
  const double s = mollifier_variance(j);
  const double step = g.h() / 20.0;
  const int nseg = static_cast<int>(std::ceil(1.5 / step));
  const double dl = 1.5 / nseg;
  ScalarField ref = zero_field(g);
  for (int q = 0; q < nseg; ++q) {
    const double px = -0.75 + (q + 0.5) * dl;
    for (int i = 0; i < g.size; ++i) {
      const double dx = g.coord(i) - px;
      for (int jj = 0; jj < g.size; ++jj) {
        const double dy = g.coord(jj);
        ref(i, jj) += dl / (2.0 * M_PI * s) * std::exp(-0.5 * (dx * dx + dy * dy) / s);
      }
    }
  }
  CHECK(rel_l2_error(f, ref, g.h()) < 2e-3);
}

TEST_CASE("mollified mass never exceeds the total variation") {
  RadonMeasureSpec mu;
  mu.atoms.push_back({{0.3, 0.4}, 0.7});
  mu.atoms.push_back({{-0.2, 0.1}, -0.4});
  mu.filaments.push_back({{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}}, 0.8});
  mu.gaussians.push_back({{0.0, 0.6}, -0.3, 0.02});
  const double tv = total_variation(mu);
  for (int j : {1, 2, 4, 8})
    CHECK(lp_norm(mollify(mu, g, j), 1.0, g.h()) <= tv * (1.0 + 1e-6));
}

TEST_CASE("weak pairing of the mollified Dirac expands in the mollifier variance") {
  ScalarField psi = zero_field(g);
  for (int i = 0; i < g.size; ++i)
    for (int jj = 0; jj < g.size; ++jj) {
      const double x = g.coord(i), y = g.coord(jj);
      psi(i, jj) = std::exp(-0.5 * (x * x + y * y));
    }
  double prev = 1.0;
  for (int j : {2, 4, 8}) {
    const double got = weak_pairing(mollify(unit_atom(), g, j), psi, g.h());
    const double err = std::abs(got - 1.0);  // psi(0) = 1
    CHECK(err < 0.6 / (j * j));
    CHECK(err > 0.3 / (j * j));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("heat flow is self-adjoint under the pairing") {
  const ScalarField f = oracle::gaussian(g, 1.0, 0.06, 0.4, -0.3);
  const ScalarField psi = oracle::gaussian(g, 2.0, 0.11, -0.2, 0.5);
  const double a = weak_pairing(heat_propagate(f, g, 0.04), psi, g.h());
  const double b = weak_pairing(f, heat_propagate(psi, g, 0.04), g.h());
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("exact pairing handles every part of the measure") {
  auto psi = [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); };
  RadonMeasureSpec mu;
  mu.atoms.push_back({{0.5, -0.5}, 2.0});
  CHECK(pair_measure(mu, psi, 0.01) == doctest::Approx(2.0 * psi(0.5, -0.5)).epsilon(1e-14));

  RadonMeasureSpec blob;
  blob.gaussians.push_back({{0.25, 0.0}, 1.5, 0.04});
  const double v = 0.04;
  const double exact = 1.5 / (1.0 + v) * std::exp(-0.5 * 0.25 * 0.25 / (1.0 + v));
  CHECK(pair_measure(blob, psi, 0.01) == doctest::Approx(exact).epsilon(1e-10));

  // pairing a filament with 1 matches its mass
  RadonMeasureSpec fil;
  fil.filaments.push_back({{{-0.3, 0.2}, {0.4, 0.2}, {0.4, 0.6}}, 1.25});
  auto one = [](double, double) { return 1.0; };
  CHECK(pair_measure(fil, one, 0.01) ==
        doctest::Approx(1.25 * (0.7 + 0.4)).epsilon(1e-12));
}

TEST_CASE("measure specs round-trip through JSON") {
  RadonMeasureSpec mu;
  mu.atoms.push_back({{0.125, -0.5}, 1.75});
  mu.filaments.push_back({{{-0.5, 0.0}, {0.5, 0.25}}, -0.6});
  mu.gaussians.push_back({{0.0, 0.3}, 0.2, 0.015});
  mu.density_file = "some/dump";
  const RadonMeasureSpec back = measure_from_json_text(measure_to_json_text(mu));
  REQUIRE(back.atoms.size() == 1);
  REQUIRE(back.filaments.size() == 1);
  REQUIRE(back.gaussians.size() == 1);
  CHECK(back.atoms[0].x.isApprox(mu.atoms[0].x, 0.0));
  CHECK(back.atoms[0].w == mu.atoms[0].w);
  CHECK(back.filaments[0].vertices[1].isApprox(mu.filaments[0].vertices[1], 0.0));
  CHECK(back.filaments[0].density == mu.filaments[0].density);
  CHECK(back.gaussians[0].variance == mu.gaussians[0].variance);
  CHECK(back.density_file == mu.density_file);

  CHECK_THROWS(measure_from_json_text("{\"filaments\":[{\"vertices\":[[0,0]],\"density\":1}]}"));
  CHECK_THROWS(measure_from_json_file("nonexistent.json"));
}
