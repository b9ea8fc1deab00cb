#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "petty/box_union.hpp"
#include "petty/convex.hpp"
#include "petty/error.hpp"
#include "petty/polygon.hpp"
#include "petty/sphere_grid.hpp"
#include "petty/surface_measure.hpp"
#include "petty/vec.hpp"

namespace petty {

/// Projection body of a discrete surface measure:
/// h(z) = 1/2 * sum_i mass_i |z . normal_i|, i.e. the zonotope with
/// generators mass_i * normal_i / 2.
inline ConvexBody projection_body(const SurfaceMeasure& mu) {
  if (mu.atoms.empty() || !(mu.total_mass() > 0.0)) fail(ErrorKind::domain, "surface measure has no mass");
  std::vector<VecN> gens;
  gens.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) gens.push_back(a.normal * (0.5 * a.mass));
  return ConvexBody::zonotope(mu.dim, std::move(gens));
}

/// Half-widths a_i = A_i / 2 when every atom normal is a signed coordinate
/// axis (A_i = mass of the +-e_i classes); the projection body is then the
/// box with these half-widths.
inline std::optional<std::vector<double>> axis_class_half_widths(const SurfaceMeasure& mu) {
  std::vector<double> a(static_cast<std::size_t>(mu.dim), 0.0);
  for (const auto& atom : mu.atoms) {
    int axis = -1;
    for (int i = 0; i < mu.dim; ++i)
      if (std::abs(atom.normal[i]) == 1.0) axis = i;
    if (axis < 0) return std::nullopt;
    a[static_cast<std::size_t>(axis)] += 0.5 * atom.mass;
  }
  return a;
}

inline ConvexBody projection_body(const PolygonSet& e) { return projection_body(surface_measure(e)); }

/// Box-unions: the closed-form box, which agrees with the zonotope path.
inline ConvexBody projection_body(const BoxUnion& e) {
  const auto a = axis_class_half_widths(surface_measure(e));
  return ConvexBody::box(*a);
}

/// |Pi* E| for a polygon: exact area of the polar of the zonogon.
inline VolumeEstimate polar_projection_volume(const PolygonSet& e) {
  return polar_volume(projection_body(e), circle_grid(4));
}

/// |Pi* E| for a box-union: cross-polytope volume 2^n / (n! prod a_i).
inline VolumeEstimate polar_projection_volume(const BoxUnion& e) {
  const auto a = *axis_class_half_widths(surface_measure(e));
  double v = e.dim() == 2 ? 4.0 / 2.0 : 8.0 / 6.0;
  for (double ai : a) v /= ai;
  return {v, 0.0};
}

/// |Pi* E| for a general surface measure: exact in 2D and for axis-class
/// measures, radial quadrature otherwise.
inline VolumeEstimate polar_projection_volume(const SurfaceMeasure& mu, const SphericalGrid& grid) {
  if (const auto a = axis_class_half_widths(mu)) {
    double v = mu.dim == 2 ? 2.0 : 8.0 / 6.0;
    for (double ai : *a) v /= ai;
    return {v, 0.0};
  }
  return polar_volume(projection_body(mu), grid);
}

/// (omega_n / omega_{n-1})^n.
inline double petty_bound(int n) { return std::pow(unit_ball_volume(n) / unit_ball_volume(n - 1), n); }

struct PettyReport {
  int dim{2};
  double volume{0.0};
  double polar_projection_volume{0.0};
  double error_estimate{0.0};
  double product{0.0};  // |E|^{n-1} |Pi* E|
  double bound{0.0};
  double slack{0.0};  // bound - product
};

inline PettyReport make_petty_report(int n, double vol, const VolumeEstimate& polar) {
  PettyReport r;
  r.dim = n;
  r.volume = vol;
  r.polar_projection_volume = polar.value;
  r.product = std::pow(vol, n - 1) * polar.value;
  r.error_estimate = std::pow(vol, n - 1) * polar.error;
  r.bound = petty_bound(n);
  r.slack = r.bound - r.product;
  return r;
}

inline PettyReport petty_product(const PolygonSet& e) { return make_petty_report(2, volume(e), polar_projection_volume(e)); }
inline PettyReport petty_product(const BoxUnion& e) {
  return make_petty_report(e.dim(), volume(e), polar_projection_volume(e));
}

inline constexpr double kDetTolerance = 1e-12;

/// Max over grid directions of |h_{Pi(AP)}(u) - h_{A^{-t} Pi P}(u)| / (1 + |h|),
/// using h_{A^{-t} Pi P}(u) = h_{Pi P}(A^{-1} u).
inline double affine_image_check(const PolygonSet& p, const Mat2& a, const SphericalGrid& grid) {
  if (std::abs(a.det() - 1.0) > kDetTolerance) fail(ErrorKind::not_volume_preserving, "matrix determinant is not 1");
  if (grid.dim != 2) fail(ErrorKind::domain, "planar grid required");
  const ConvexBody pi_ap = projection_body(p.transformed(a));
  const ConvexBody pi_p = projection_body(p);
  const Mat2 inv = a.inverse();
  double worst = 0.0;
  for (const auto& u : grid.nodes) {
    const double lhs = support(pi_ap, u.vec());
    const double rhs = support(pi_p, VecN(inv * u.xy()));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return worst;
}

inline constexpr double kInclusionRelativeSlack = 1e-9;

struct PolarInclusionReport {
  bool holds;
  double worst_margin;  // max over the grid of rho_{(Pi*E)^s} / rho_{Pi*(E^s)}
};

/// Checks (Pi* E)^s subset Pi*(E^s) for symmetrization along u, on the grid's
/// radial functions. Requires no boundary mass with normal orthogonal to u.
inline PolarInclusionReport polar_steiner_inclusion_check(const PolygonSet& e, const Direction& u,
                                                          const SphericalGrid& grid) {
  const RigidFrame frame = RigidFrame::with_last_axis(u);
  const double vertical = vertical_boundary_measure(e, frame);
  if (vertical > 0.0)
    fail(ErrorKind::vertical_boundary,
         "boundary mass " + std::to_string(vertical) + " has normals orthogonal to the symmetrization direction");
  const ConvexBody polar_pi = ConvexBody::facets(polar_polygon(projection_body(e)));
  const ConvexBody lhs = steiner_symmetrize_convex(polar_pi, u);
  const ConvexBody rhs = ConvexBody::polar(projection_body(steiner_symmetrize(e, u)));
  double worst = 0.0;
  for (const auto& v : grid.nodes) worst = std::max(worst, radial(lhs, v) / radial(rhs, v));
  return {worst <= 1.0 + kInclusionRelativeSlack, worst};
}

}  // namespace petty
