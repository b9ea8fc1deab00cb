#pragma once

#include <cmath>
#include <vector>

#include "petty/vec.hpp"

namespace petty {

/// Normal orthogonality threshold used by the regularity checks.
inline constexpr double kOrthogonalTolerance = 1e-12;

/// Discrete surface area measure: boundary mass carried by each outer unit normal.
struct SurfaceMeasure {
  struct Atom {
    VecN normal;  // outer, unit length
    double mass;  // boundary (n-1)-area
  };

  int dim{2};
  std::vector<Atom> atoms;

  double total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
  }

  /// Sum of mass * normal; vanishes for a closed boundary.
  VecN moment() const {
    VecN m(dim);
    for (const auto& a : atoms) m = m + a.normal * a.mass;
    return m;
  }

  /// Mass of atoms whose normal is orthogonal to `u` (|normal . u| <= tol).
  double orthogonal_mass(const VecN& u, double tol = kOrthogonalTolerance) const {
    double s = 0.0;
    for (const auto& a : atoms)
      if (std::abs(dot(a.normal, u)) <= tol) s += a.mass;
    return s;
  }
};

/// Result of a regular-direction test: `regular` iff no boundary mass has a
/// normal orthogonal to the direction.
struct RegularityReport {
  bool regular;
  double orthogonal_mass;
};

inline RegularityReport is_regular_direction(const SurfaceMeasure& mu, const Direction& u) {
  const double m = mu.orthogonal_mass(u.vec());
  return {m == 0.0, m};
}

/// Boundary mass with normal orthogonal to the frame's last axis. Zero means
/// the set has no "vertical" boundary in that frame.
inline double vertical_boundary_measure(const SurfaceMeasure& mu, const RigidFrame& frame) {
  return mu.orthogonal_mass(frame.last_axis());
}

}  // namespace petty
