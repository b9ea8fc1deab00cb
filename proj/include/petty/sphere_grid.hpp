#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "petty/error.hpp"
#include "petty/vec.hpp"

namespace petty {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on P_n started from the Chebyshev guesses.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::domain, "Gauss-Legendre order must be positive");
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  // Returns (P_n(z), P_n'(z)).
  const auto legendre = [n](double z) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (z * p1 - p0) / (z * z - 1.0)};
  };
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(z).second;
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    x[lo] = -z;
    x[hi] = z;
    w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Quadrature rule on S^{n-1}: positive weights summing to the sphere measure.
struct SphericalGrid {
  int dim{2};
  std::vector<Direction> nodes;
  std::vector<double> weights;
  int n_theta{0};  // product-rule resolution (3D only; 0 for custom grids)
  int n_phi{0};

  std::size_t size() const { return nodes.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

/// Surface measure of S^{n-1}: 2*pi for the circle, 4*pi for the sphere.
constexpr double sphere_measure(int n) { return n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

inline constexpr int kDefaultCircleNodes = 4096;
inline constexpr int kDefaultThetaNodes = 128;
inline constexpr int kDefaultPhiNodes = 256;

/// N equally spaced angles on S^1 starting at angle 0.
inline SphericalGrid circle_grid(int n_angles = kDefaultCircleNodes) {
  if (n_angles < 3) fail(ErrorKind::domain, "circle grid needs at least 3 nodes");
  SphericalGrid g;
  g.dim = 2;
  g.nodes.reserve(static_cast<std::size_t>(n_angles));
  const double w = 2.0 * std::numbers::pi / n_angles;
  for (int i = 0; i < n_angles; ++i) {
    g.nodes.push_back(Direction::from_angle(w * i));
    g.weights.push_back(w);
  }
  return g;
}

/// Product rule on S^2: Gauss-Legendre in the polar angle on each hemisphere
/// (weight sin(theta)) times Gauss-Legendre in azimuth on each quadrant.
/// Panels break on the coordinate great circles, so integrands with kinks only
/// there (functions of |u_1|, |u_2|, |u_3|) integrate spectrally.
inline SphericalGrid sphere_grid(int n_theta = kDefaultThetaNodes, int n_phi = kDefaultPhiNodes) {
  if (n_theta < 2 || n_theta % 2 != 0) fail(ErrorKind::domain, "theta node count must be even and >= 2");
  if (n_phi < 4 || n_phi % 4 != 0) fail(ErrorKind::domain, "phi node count must be a positive multiple of 4");
  const auto [tx, tw] = gauss_legendre(n_theta / 2);
  const auto [px, pw] = gauss_legendre(n_phi / 4);

  std::vector<double> theta, theta_w;
  for (int hemi = 0; hemi < 2; ++hemi) {
    const double a = hemi * std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < tx.size(); ++i) {
      const double t = a + (tx[i] + 1.0) * std::numbers::pi / 4.0;
      theta.push_back(t);
      theta_w.push_back(tw[i] * std::numbers::pi / 4.0 * std::sin(t));
    }
  }
  std::vector<double> phi, phi_w;
  for (int quad = 0; quad < 4; ++quad) {
    const double a = quad * std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < px.size(); ++i) {
      phi.push_back(a + (px[i] + 1.0) * std::numbers::pi / 4.0);
      phi_w.push_back(pw[i] * std::numbers::pi / 4.0);
    }
  }

  SphericalGrid g;
  g.dim = 3;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  g.nodes.reserve(theta.size() * phi.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double st = std::sin(theta[i]), ct = std::cos(theta[i]);
    for (std::size_t j = 0; j < phi.size(); ++j) {
      g.nodes.push_back(Direction::normalize(VecN(st * std::cos(phi[j]), st * std::sin(phi[j]), ct)));
      g.weights.push_back(theta_w[i] * phi_w[j]);
    }
  }
  return g;
}

/// Default grid for dimension n.
inline SphericalGrid default_grid(int n) { return n == 2 ? circle_grid() : sphere_grid(); }

/// Sum of weight_i * f(node_i). Non-finite values raise a numerical error
/// naming the node.
template <typename F>
double integrate_sphere(const SphericalGrid& grid, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand not finite at node " << i << " (";
      for (int k = 0; k < grid.dim; ++k) os << (k ? ", " : "") << grid.nodes[i][k];
      os << ")";
      fail(ErrorKind::numerical, os.str());
    }
    sum += grid.weights[i] * v;
  }
  return sum;
}

}  // namespace petty
