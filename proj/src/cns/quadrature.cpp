#include "cns/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace cns {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre requires n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

using Moments = std::array<double, 4>;

constexpr std::array<std::array<double, 4>, 4> kBinom{
    {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}}};

// m_k = integral over [0, eps] of s^(-a) (t-s)^(-b) (s-c)^k ds.  The regular
// factor is expanded binomially about s = 0, so every term is a pure power
// with a closed-form integral; the series ratio is eps/t <= 1/2 and each
// sub-series has positive terms, hence clean truncation at roundoff.
Moments left_end_moments(double eps, double c, double t, double a, double b) {
  Moments m{};
  for (int k = 0; k < 4; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      double sub = 0.0, g = 1.0;
      for (int i = 0; i < 200; ++i) {
        const double term = g * std::pow(eps, j + i + 1.0 - a) / ((j + i + 1.0 - a) * std::pow(t, i));
        sub += term;
        if (i > 3 && term < 1e-17 * sub) break;
        g *= (b + i) / (i + 1.0);
      }
      acc += kBinom[k][j] * std::pow(-c, k - j) * sub;
    }
    m[k] = acc * std::pow(t, -b);
  }
  return m;
}

// Mirror image: panel [lo, t], substituting u = t - s.
Moments right_end_moments(double lo, double c, double t, double a, double b) {
  const double eps = t - lo;
  Moments m{};
  for (int k = 0; k < 4; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      double sub = 0.0, g = 1.0;
      for (int i = 0; i < 200; ++i) {
        const double term = g * std::pow(eps, j + i + 1.0 - b) / ((j + i + 1.0 - b) * std::pow(t, i));
        sub += term;
        if (i > 3 && term < 1e-17 * sub) break;
        g *= (a + i) / (i + 1.0);
      }
      acc += kBinom[k][j] * std::pow(t - c, k - j) * (j % 2 ? -1.0 : 1.0) * sub;
    }
    m[k] = acc * std::pow(t, -a);
  }
  return m;
}

// Away from the endpoints the weight is analytic on the panel and a fixed
// Gauss rule nails its moments: the nearest branch point sits at least one
// panel away, so the Bernstein ellipse parameter is >= 3 and 24 points give
// full double precision.
Moments interior_moments(double lo, double hi, double c, double t, double a, double b,
                         const GaussRule& fine) {
  const double half = 0.5 * (hi - lo);
  Moments m{};
  for (size_t i = 0; i < fine.nodes.size(); ++i) {
    const double s = c + half * fine.nodes[i];
    const double w = half * fine.weights[i] * std::pow(s, -a) * std::pow(t - s, -b);
    double p = 1.0;
    for (int k = 0; k < 4; ++k) {
      m[k] += w * p;
      p *= s - c;
    }
  }
  return m;
}

}  // namespace

ProductQuadrature product_quadrature(double t, double a, double b, int panels) {
  if (!(t > 0.0)) throw std::invalid_argument("product_quadrature requires t > 0");
  if (!(a >= 0.0 && a < 1.0 && b >= 0.0 && b < 1.0))
    throw std::invalid_argument("product_quadrature requires exponents in [0, 1)");
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("product_quadrature requires an even panel count >= 2");

  static const GaussRule kGl4 = gauss_legendre(4);
  static const GaussRule kGl24 = gauss_legendre(24);

  // Quadratically graded breakpoints, symmetric about t/2.
  const int half = panels / 2;
  std::vector<double> bp(panels + 1);
  for (int k = 0; k <= half; ++k) {
    const double r = static_cast<double>(k) / half;
    bp[k] = 0.5 * t * r * r;
    bp[panels - k] = t - bp[k];
  }

  ProductQuadrature q;
  q.nodes.reserve(4 * panels);
  q.weights.reserve(4 * panels);
  q.plain_weights.reserve(4 * panels);

  for (int p = 0; p < panels; ++p) {
    const double lo = bp[p], hi = bp[p + 1];
    const double c = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);

    Moments m;
    if (p == 0)
      m = left_end_moments(hi, c, t, a, b);
    else if (p == panels - 1)
      m = right_end_moments(lo, c, t, a, b);
    else
      m = interior_moments(lo, hi, c, t, a, b, kGl24);

    // Weighted panel rule at the Gauss points: match the first four moments
    // of the full weight through a Vandermonde solve in the scaled variable
    // (s - c)/hw, which keeps the 4x4 system well conditioned.
    Eigen::Matrix4d V;
    Eigen::Vector4d rhs;
    for (int k = 0; k < 4; ++k) {
      for (int i = 0; i < 4; ++i) V(k, i) = std::pow(kGl4.nodes[i], k);
      rhs(k) = m[k] / std::pow(hw, k);
    }
    const Eigen::Vector4d w = V.partialPivLu().solve(rhs);

    for (int i = 0; i < 4; ++i) {
      q.nodes.push_back(c + hw * kGl4.nodes[i]);
      q.weights.push_back(w(i));
      q.plain_weights.push_back(hw * kGl4.weights[i]);
    }
  }
  return q;
}

ProductQuadrature graded_mesh(double t, int panels, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("graded_mesh requires gamma in [0, 1)");
  return product_quadrature(t, gamma, gamma, panels);
}

std::vector<double> graded_times(double T, int M, double gamma) {
  if (!(T > 0.0)) throw std::invalid_argument("graded_times requires T > 0");
  if (M < 1) throw std::invalid_argument("graded_times requires M >= 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("graded_times requires gamma >= 1");
  std::vector<double> ts(M);
  for (int k = 1; k <= M; ++k) ts[k - 1] = T * std::pow(static_cast<double>(k) / M, gamma);
  ts[M - 1] = T;
  return ts;
}

}  // namespace cns
