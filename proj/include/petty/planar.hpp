#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "petty/vec.hpp"

namespace petty::planar {

/// Shoelace signed area; positive for counterclockwise chains.
inline double signed_area(std::span<const Vec2> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

/// Andrew's monotone chain. Returns the hull counterclockwise without
/// collinear points; fewer than three points on degenerate input.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Distance from p to the closed segment [a, b].
inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

/// Even-odd point containment; boundary points may land on either side.
inline bool contains(std::span<const Vec2> poly, const Vec2& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

/// Distance from p to the closed region bounded by `poly` (0 inside).
inline double distance_to_region(std::span<const Vec2> poly, const Vec2& p) {
  if (contains(poly, p)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) d = std::min(d, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  return d;
}

/// True when the segments [a,b] and [c,d] share at least one point.
inline bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = orient(c, d, a), d2 = orient(c, d, b), d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  const auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) || (d3 == 0 && on_segment(a, b, c)) ||
         (d4 == 0 && on_segment(a, b, d));
}

/// Counterclockwise convex chain test (collinear vertices allowed).
inline bool is_convex(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < 0.0) return false;
  return true;
}

/// Removes consecutive duplicates and vertices whose turn is within
/// `tol` * |edge_in| * |edge_out| of straight (a relative cross-product test).
inline std::vector<Vec2> prune_collinear(std::vector<Vec2> pts, double tol) {
  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    std::vector<Vec2> out;
    out.reserve(pts.size());
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = out.empty() ? pts[(i + n - 1) % n] : out.back();
      const Vec2& cur = pts[i];
      const Vec2& next = pts[(i + 1) % n];
      const Vec2 e0 = cur - prev, e1 = next - cur;
      const double l0 = e0.norm(), l1 = e1.norm();
      const bool duplicate = l0 == 0.0;
      const bool straight = !duplicate && l1 > 0.0 && std::abs(cross(e0, e1)) <= tol * l0 * l1 && dot(e0, e1) > 0.0;
      if (duplicate || straight) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    if (out.size() < 3) break;
    pts = std::move(out);
  }
  return pts;
}

}  // namespace petty::planar
