#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "petty/columns.hpp"
#include "petty/error.hpp"
#include "petty/planar.hpp"
#include "petty/sphere_grid.hpp"
#include "petty/surface_measure.hpp"
#include "petty/vec.hpp"

namespace petty {

/// Simple planar polygon, stored counterclockwise, viewed as a set of finite
/// perimeter. Edge i runs from vertex i to vertex i+1.
class PolygonSet {
 public:
  /// Validates and normalizes: drops repeated vertices, reorients clockwise
  /// input, rejects degenerate or self-intersecting chains.
  static PolygonSet make(std::vector<Vec2> vertices) {
    for (const auto& v : vertices)
      if (!std::isfinite(v.x) || !std::isfinite(v.y)) fail(ErrorKind::invalid_input, "non-finite polygon vertex");
    vertices = dedupe(std::move(vertices));
    if (vertices.size() < 3) fail(ErrorKind::invalid_input, "polygon needs at least 3 distinct vertices");
    const double a = planar::signed_area(vertices);
    if (a == 0.0) fail(ErrorKind::invalid_input, "polygon has zero area");
    if (a < 0.0) std::reverse(vertices.begin(), vertices.end());
    check_simple(vertices);
    return PolygonSet(std::move(vertices));
  }

  /// Skips the O(n^2) simplicity test; for chains simple by construction.
  static PolygonSet make_trusted(std::vector<Vec2> vertices) {
    vertices = dedupe(std::move(vertices));
    if (vertices.size() < 3 || !(planar::signed_area(vertices) > 0.0))
      fail(ErrorKind::numerical, "constructed polygon is degenerate");
    return PolygonSet(std::move(vertices));
  }

  const std::vector<Vec2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Vec2& vertex(std::size_t i) const { return v_[i % v_.size()]; }
  Vec2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }
  double edge_length(std::size_t i) const { return edge(i).norm(); }
  /// Outer unit normal of edge i (right-hand side of a counterclockwise chain).
  Vec2 outer_normal(std::size_t i) const {
    const Vec2 e = edge(i);
    return Vec2{e.y, -e.x} / e.norm();
  }

  Vec2 centroid() const {
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const Vec2& p = vertex(i);
      const Vec2& q = vertex(i + 1);
      const double w = cross(p, q);
      a += w;
      cx += (p.x + q.x) * w;
      cy += (p.y + q.y) * w;
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
  }

  PolygonSet translated(const Vec2& t) const {
    std::vector<Vec2> w(v_);
    for (auto& p : w) p += t;
    return PolygonSet(std::move(w));
  }

  /// Image under a linear map; orientation-reversing maps are re-oriented.
  PolygonSet transformed(const Mat2& m) const {
    std::vector<Vec2> w;
    w.reserve(v_.size());
    for (const auto& p : v_) w.push_back(m * p);
    if (m.det() < 0.0) std::reverse(w.begin(), w.end());
    if (m.det() == 0.0) fail(ErrorKind::domain, "singular map");
    return PolygonSet(std::move(w));
  }

  PolygonSet rotated(double theta) const { return transformed(Mat2::rotation(theta)); }

 private:
  explicit PolygonSet(std::vector<Vec2> v) : v_(std::move(v)) {}

  static std::vector<Vec2> dedupe(std::vector<Vec2> v) {
    v.erase(std::unique(v.begin(), v.end()), v.end());
    while (v.size() > 1 && v.front() == v.back()) v.pop_back();
    return v;
  }

  static void check_simple(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = v[i];
      const Vec2& b = v[(i + 1) % n];
      // Adjacent edges must not fold back onto each other.
      const Vec2& c = v[(i + 2) % n];
      if (orient(a, b, c) == 0.0 && dot(b - a, c - b) < 0.0)
        fail(ErrorKind::invalid_input, "polygon folds back on itself at vertex " + std::to_string((i + 1) % n));
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (planar::segments_intersect(a, b, v[j], v[(j + 1) % n]))
          fail(ErrorKind::invalid_input,
               "polygon is self-intersecting (edges " + std::to_string(i) + " and " + std::to_string(j) + ")");
      }
    }
  }

  std::vector<Vec2> v_;
};

inline double volume(const PolygonSet& p) { return planar::signed_area(p.vertices()); }

inline double perimeter(const PolygonSet& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p.edge_length(i);
  return s;
}

/// One atom per edge: (outer normal, edge length).
inline SurfaceMeasure surface_measure(const PolygonSet& p) {
  SurfaceMeasure mu;
  mu.dim = 2;
  mu.atoms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mu.atoms.push_back({VecN(p.outer_normal(i)), p.edge_length(i)});
  return mu;
}

inline double circumradius(const PolygonSet& p) {
  double r = 0.0;
  for (const auto& v : p.vertices()) r = std::max(r, v.norm());
  return r;
}

inline RegularityReport is_regular_direction(const PolygonSet& p, const Direction& u) {
  return is_regular_direction(surface_measure(p), u);
}

inline double vertical_boundary_measure(const PolygonSet& p, const RigidFrame& frame) {
  return vertical_boundary_measure(surface_measure(p), frame);
}

/// Radius of the centered disk with the same area.
inline double spherical_symmetral(const PolygonSet& p) { return std::sqrt(volume(p) / std::numbers::pi); }

namespace detail {

/// Orthonormal (base, section) coordinates for slicing a polygon.
struct SliceBasis {
  Vec2 base;
  Vec2 section;

  Vec2 apply(const Vec2& p) const { return {dot(base, p), dot(section, p)}; }
  Vec2 unapply(const Vec2& q) const { return base * q.x + section * q.y; }

  static SliceBasis axis(int k) {
    if (k == 1) return {{1.0, 0.0}, {0.0, 1.0}};
    if (k == 0) return {{0.0, 1.0}, {1.0, 0.0}};
    fail(ErrorKind::domain, "polygon section axis must be 0 or 1");
  }
  static SliceBasis frame(const RigidFrame& f) {
    if (f.dim() != 2) fail(ErrorKind::domain, "polygon slicing needs a planar frame");
    return {f.axis(0).xy(), f.axis(1).xy()};
  }
};

inline ColumnStructure columns(const PolygonSet& p, const SliceBasis& basis, int axis_label) {
  const std::size_t n = p.size();
  std::vector<Vec2> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = basis.apply(p.vertex(i));

  std::vector<double> xs;
  xs.reserve(n);
  for (const auto& v : q) xs.push_back(v.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  struct EdgeSpan {
    double x0, x1;  // x0 < x1
    Vec2 left, right;
    int index;
  };
  std::vector<EdgeSpan> spans;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = q[i];
    const Vec2& b = q[(i + 1) % n];
    if (a.x == b.x) continue;  // parallel to the section axis: no crossing
    spans.push_back(a.x < b.x ? EdgeSpan{a.x, b.x, a, b, static_cast<int>(i)}
                              : EdgeSpan{b.x, a.x, b, a, static_cast<int>(i)});
  }
  std::sort(spans.begin(), spans.end(), [](const EdgeSpan& l, const EdgeSpan& r) { return l.x0 < r.x0; });

  const auto y_at = [](const EdgeSpan& e, double x) {
    if (x == e.x0) return e.left.y;
    if (x == e.x1) return e.right.y;
    const double t = (x - e.x0) / (e.x1 - e.x0);
    return e.left.y + t * (e.right.y - e.left.y);
  };

  ColumnStructure cs;
  cs.dim = 2;
  cs.axis = axis_label;
  std::vector<const EdgeSpan*> active;
  std::size_t next = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double x0 = xs[k], x1 = xs[k + 1];
    std::erase_if(active, [x0](const EdgeSpan* e) { return e->x1 <= x0; });
    while (next < spans.size() && spans[next].x0 <= x0) active.push_back(&spans[next++]);

    struct Crossing {
      double y0, slope, ymid;
      int index;
    };
    std::vector<Crossing> cr;
    cr.reserve(active.size());
    const double w = x1 - x0;
    for (const EdgeSpan* e : active) {
      const double ya = y_at(*e, x0), yb = y_at(*e, x1);
      cr.push_back({ya, (yb - ya) / w, 0.5 * (ya + yb), e->index});
    }
    if (cr.size() % 2 != 0) fail(ErrorKind::numerical, "odd number of section endpoints");
    std::sort(cr.begin(), cr.end(), [](const Crossing& l, const Crossing& r) { return l.ymid < r.ymid; });

    ColumnCell cell;
    cell.lo[0] = x0;
    cell.hi[0] = x1;
    for (std::size_t j = 0; j < cr.size(); j += 2)
      cell.intervals.push_back({cr[j].y0, cr[j].slope, cr[j + 1].y0, cr[j + 1].slope, cr[j].index, cr[j + 1].index});
    if (!cell.intervals.empty()) cs.cells.push_back(std::move(cell));
  }
  return cs;
}

inline std::size_t generic_cell(const ColumnStructure& cs, double x, double tol) {
  if (cs.cells.empty() || x < cs.cells.front().lo[0] || x > cs.cells.back().hi[0])
    fail(ErrorKind::domain, "abscissa outside the projection of the set");
  for (std::size_t k = 0; k < cs.cells.size(); ++k) {
    const auto& c = cs.cells[k];
    if (std::abs(x - c.lo[0]) <= tol || std::abs(x - c.hi[0]) <= tol)
      fail(ErrorKind::non_generic_point, "abscissa lies on a column cell boundary");
    if (x > c.lo[0] && x < c.hi[0]) return k;
  }
  fail(ErrorKind::domain, "abscissa outside the projection of the set");
}

}  // namespace detail

/// Sections along coordinate axis `axis` (0 = x, 1 = y); base cells are
/// delimited by the vertex coordinates on the other axis.
inline ColumnStructure column_structure(const PolygonSet& p, int axis = 1) {
  return detail::columns(p, detail::SliceBasis::axis(axis), axis);
}

/// Sections along the frame's last axis, in frame coordinates.
inline ColumnStructure column_structure(const PolygonSet& p, const RigidFrame& frame) {
  return detail::columns(p, detail::SliceBasis::frame(frame), 1);
}

/// Length of the section through base coordinate `x` (frame coordinates).
inline double section_length(const PolygonSet& p, double x, const RigidFrame& frame) {
  const ColumnStructure cs = column_structure(p, frame);
  for (const auto& c : cs.cells)
    if (x >= c.lo[0] && x <= c.hi[0]) return c.length_at(x - c.lo[0]);
  return 0.0;
}

inline constexpr double kGenericPointTolerance = 1e-12;

/// Derivative of the section length at a generic abscissa, as the sum over
/// the section's boundary points of nu_x / |nu_y| for the inner normal nu.
inline double section_length_gradient(const PolygonSet& p, double x, const RigidFrame& frame,
                                      double tol = kGenericPointTolerance) {
  const detail::SliceBasis basis = detail::SliceBasis::frame(frame);
  const ColumnStructure cs = detail::columns(p, basis, 1);
  const auto& cell = cs.cells[detail::generic_cell(cs, x, tol)];
  double g = 0.0;
  const auto contribution = [&](int edge) {
    const Vec2 inner = basis.apply(-p.outer_normal(static_cast<std::size_t>(edge)));
    return inner.x / std::abs(inner.y);
  };
  for (const auto& iv : cell.intervals) g += contribution(iv.lo_edge) + contribution(iv.hi_edge);
  return g;
}

inline double section_length_gradient(const PolygonSet& p, double x, double tol = kGenericPointTolerance) {
  return section_length_gradient(p, x, RigidFrame::identity(2), tol);
}

/// Collinear-vertex pruning tolerance applied to symmetrized polygons.
inline constexpr double kCollinearTolerance = 1e-12;

/// Steiner symmetral about u^perp: every chord parallel to u is replaced by
/// the centered segment of the same total length. Jumps of the section
/// length become edges parallel to u.
inline PolygonSet steiner_symmetrize(const PolygonSet& p, const Direction& u) {
  if (u.dim() != 2) fail(ErrorKind::domain, "polygon symmetrization needs a planar direction");
  const RigidFrame frame = RigidFrame::with_last_axis(u);
  const detail::SliceBasis basis = detail::SliceBasis::frame(frame);
  const ColumnStructure cs = detail::columns(p, basis, 1);
  if (cs.cells.empty()) fail(ErrorKind::numerical, "polygon has no sections");

  double scale = cs.cells.back().hi[0] - cs.cells.front().lo[0];
  for (const auto& c : cs.cells) scale = std::max({scale, c.length_at(0.0), c.length_at(c.hi[0] - c.lo[0])});
  // Jumps below the pruning tolerance are roundoff in a continuous length.
  const double jump_tol = kCollinearTolerance * scale;
  std::vector<Vec2> lower;
  lower.reserve(2 * cs.cells.size() + 2);
  for (std::size_t k = 0; k < cs.cells.size(); ++k) {
    const auto& c = cs.cells[k];
    if (k > 0 && c.lo[0] != cs.cells[k - 1].hi[0]) fail(ErrorKind::numerical, "projection of the polygon is not connected");
    const double w = c.hi[0] - c.lo[0];
    const double y0 = -0.5 * c.length_at(0.0);
    if (k == 0 || std::abs(lower.back().y - y0) > jump_tol) lower.push_back({c.lo[0], y0});
    lower.push_back({c.hi[0], -0.5 * c.length_at(w)});
  }
  std::vector<Vec2> chain;
  chain.reserve(2 * lower.size());
  for (const auto& q : lower) chain.push_back(basis.unapply(q));
  for (auto it = lower.rbegin(); it != lower.rend(); ++it) chain.push_back(basis.unapply({it->x, -it->y}));
  // Vertices closer than jump_tol come from slivers between nearly equal
  // breakpoints.
  std::vector<Vec2> merged;
  merged.reserve(chain.size());
  for (const auto& q : chain)
    if (merged.empty() || (q - merged.back()).norm() > jump_tol) merged.push_back(q);
  while (merged.size() > 3 && (merged.back() - merged.front()).norm() <= jump_tol) merged.pop_back();
  return PolygonSet::make_trusted(planar::prune_collinear(std::move(merged), kCollinearTolerance));
}

/// Evaluable scalar field g(x, y) >= 0, with the lines across which it may
/// be discontinuous. Integrals split at these lines and use 8-point
/// Gauss-Legendre per piece (exact for polynomials of degree <= 15).
struct ScalarField {
  struct Line {
    Vec2 normal;
    double offset;  // {p : normal . p = offset}
  };
  std::function<double(const Vec2&)> eval;
  std::vector<Line> cuts;

  static ScalarField constant(double c) {
    return {[c](const Vec2&) { return c; }, {}};
  }
  static ScalarField x_squared() {
    return {[](const Vec2& p) { return p.x * p.x; }, {}};
  }
  /// Indicator of {p : normal . p <= offset}.
  static ScalarField half_plane(const Vec2& normal, double offset) {
    return {[normal, offset](const Vec2& p) { return dot(normal, p) <= offset ? 1.0 : 0.0; }, {{normal, offset}}};
  }
};

namespace detail {

/// Integral of g over the segment p(t) = a + t (b - a), t in [0, 1], with
/// respect to dt, split at the field's cut lines.
inline double integrate_along(const ScalarField& g, const Vec2& a, const Vec2& b) {
  static const auto rule = gauss_legendre(8);
  std::vector<double> breaks{0.0, 1.0};
  for (const auto& line : g.cuts) {
    const double fa = dot(line.normal, a) - line.offset;
    const double fb = dot(line.normal, b) - line.offset;
    if (fa != fb) {
      const double t = fa / (fa - fb);
      if (t > 0.0 && t < 1.0) breaks.push_back(t);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double t0 = breaks[k], t1 = breaks[k + 1];
    const double half = 0.5 * (t1 - t0);
    for (std::size_t i = 0; i < rule.first.size(); ++i) {
      const double t = t0 + (rule.first[i] + 1.0) * half;
      s += rule.second[i] * half * g.eval(a + (b - a) * t);
    }
  }
  return s;
}

}  // namespace detail

/// Both sides of the co-area identity for the y-sections:
/// lhs = integral over the boundary of g |nu_y| ds,
/// rhs = integral over x of the sum of g at the section endpoints.
struct CoareaResult {
  double lhs;
  double rhs;
};

inline CoareaResult coarea_check(const PolygonSet& p, const ScalarField& g) {
  double lhs = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 a = p.vertex(i), b = p.vertex(i + 1);
    // |nu_y| ds = |dx| along the edge.
    lhs += std::abs(b.x - a.x) * detail::integrate_along(g, a, b);
  }
  double rhs = 0.0;
  const ColumnStructure cs = column_structure(p, 1);
  for (const auto& c : cs.cells) {
    const double w = c.hi[0] - c.lo[0];
    for (const auto& iv : c.intervals) {
      rhs += w * detail::integrate_along(g, {c.lo[0], iv.lower_at(0.0)}, {c.hi[0], iv.lower_at(w)});
      rhs += w * detail::integrate_along(g, {c.lo[0], iv.upper_at(0.0)}, {c.hi[0], iv.upper_at(w)});
    }
  }
  return {lhs, rhs};
}

/// Value with an additive uncertainty bound.
struct Estimate {
  double value;
  double uncertainty;
};

namespace detail {

/// Interval union of the polygon's intersection with the line y = yc.
inline std::vector<std::pair<double, double>> scanline(const PolygonSet& p, double yc) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 a = p.vertex(i), b = p.vertex(i + 1);
    if ((a.y > yc) != (b.y > yc)) xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> iv;
  for (std::size_t j = 0; j + 1 < xs.size(); j += 2) iv.emplace_back(xs[j], xs[j + 1]);
  return iv;
}

inline double union_length(const std::vector<std::pair<double, double>>& a) {
  double s = 0.0;
  for (const auto& [l, r] : a) s += r - l;
  return s;
}

inline double intersection_length(const std::vector<std::pair<double, double>>& a,
                                  const std::vector<std::pair<double, double>>& b) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double l = std::max(a[i].first, b[j].first), r = std::min(a[i].second, b[j].second);
    if (r > l) s += r - l;
    if (a[i].second < b[j].second) ++i; else ++j;
  }
  return s;
}

}  // namespace detail

inline constexpr int kDefaultScanRows = 2048;

/// |E symmetric-difference F| by exact horizontal scanlines at `rows` row
/// centers (midpoint rule in y). The uncertainty is one row height times the
/// combined perimeter.
inline Estimate symmetric_difference_distance(const PolygonSet& e, const PolygonSet& f, int rows = kDefaultScanRows) {
  if (rows < 1) fail(ErrorKind::domain, "row count must be positive");
  double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
  for (const auto* s : {&e, &f})
    for (const auto& v : s->vertices()) ylo = std::min(ylo, v.y), yhi = std::max(yhi, v.y);
  const double h = (yhi - ylo) / rows;
  double area = 0.0;
  for (int r = 0; r < rows; ++r) {
    const double yc = ylo + (r + 0.5) * h;
    const auto a = detail::scanline(e, yc), b = detail::scanline(f, yc);
    area += h * (detail::union_length(a) + detail::union_length(b) - 2.0 * detail::intersection_length(a, b));
  }
  return {area, h * (perimeter(e) + perimeter(f))};
}

namespace detail {

inline double diameter(std::span<const Vec2> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

/// Boundary samples with arc-length spacing at most `step`, vertices included.
inline std::vector<Vec2> boundary_samples(const PolygonSet& p, double step) {
  std::vector<Vec2> s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 a = p.vertex(i), b = p.vertex(i + 1);
    const int k = std::max(1, static_cast<int>(std::ceil((b - a).norm() / step)));
    for (int j = 0; j < k; ++j) s.push_back(a + (b - a) * (static_cast<double>(j) / k));
  }
  return s;
}

}  // namespace detail

inline constexpr int kHausdorffSamplesPerDiameter = 2048;

/// Hausdorff distance between two polygons (as closed regions), from boundary
/// samples of each set at arc step <= diameter / samples_per_diameter and the
/// exact distance to the other region. The sup is attained on the sampled
/// boundary whenever the other set is convex; the uncertainty is one step.
inline Estimate hausdorff_distance(const PolygonSet& a, const PolygonSet& b,
                                   int samples_per_diameter = kHausdorffSamplesPerDiameter) {
  std::vector<Vec2> all(a.vertices());
  all.insert(all.end(), b.vertices().begin(), b.vertices().end());
  const double step = detail::diameter(all) / samples_per_diameter;
  double d = 0.0;
  for (const auto& x : detail::boundary_samples(a, step)) d = std::max(d, planar::distance_to_region(b.vertices(), x));
  for (const auto& x : detail::boundary_samples(b, step)) d = std::max(d, planar::distance_to_region(a.vertices(), x));
  return {d, step};
}

inline constexpr double kBallSampleFraction = 1.0 / 64.0;

/// Hausdorff distance from a polygon to the centered disk of radius r.
/// The excess sup_{x in E} d(x, B) = max(0, r_E - r) is exact. The deficit
/// sup_{y in B} d(y, E) is exact (r - min edge support) for convex polygons
/// containing the origin, otherwise sampled over the disk on a polar lattice
/// of spacing r * sample_fraction, which is then the uncertainty.
inline Estimate hausdorff_to_ball(const PolygonSet& e, double r, double sample_fraction = kBallSampleFraction) {
  const double excess = std::max(0.0, circumradius(e) - r);
  double min_support = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.size(); ++i) min_support = std::min(min_support, dot(e.outer_normal(i), e.vertex(i)));
  if (planar::is_convex(e.vertices()) && min_support > 0.0) return {std::max(excess, r - min_support), 0.0};

  const double step = r * sample_fraction;
  double deficit = 0.0;
  const int rings = static_cast<int>(std::ceil(1.0 / sample_fraction));
  for (int k = 0; k <= rings; ++k) {
    const double rho = r * k / rings;
    const int m = std::max(1, static_cast<int>(std::ceil(2.0 * std::numbers::pi * rho / step)));
    for (int j = 0; j < m; ++j) {
      const double t = 2.0 * std::numbers::pi * j / m;
      deficit = std::max(deficit, planar::distance_to_region(e.vertices(), {rho * std::cos(t), rho * std::sin(t)}));
    }
  }
  return {std::max(excess, deficit), step};
}

}  // namespace petty
