#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "petty/columns.hpp"
#include "petty/error.hpp"
#include "petty/polygon.hpp"
#include "petty/surface_measure.hpp"
#include "petty/vec.hpp"

namespace petty {

/// Closed axis-aligned box in R^2 or R^3.
struct Box {
  int dim{2};
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    return v;
  }
  bool operator==(const Box&) const = default;
  auto operator<=>(const Box&) const = default;
};

/// Finite union of interior-disjoint axis-aligned boxes, kept in a canonical
/// form where no two boxes can be merged across a shared facet.
class BoxUnion {
 public:
  static BoxUnion make(int dim, std::vector<Box> boxes) {
    if (dim != 2 && dim != 3) fail(ErrorKind::invalid_input, "box-union dimension must be 2 or 3");
    if (boxes.empty()) fail(ErrorKind::invalid_input, "box-union needs at least one box");
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      auto& box = boxes[b];
      box.dim = dim;
      for (int i = 0; i < dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (!std::isfinite(box.lo[k]) || !std::isfinite(box.hi[k]))
          fail(ErrorKind::invalid_input, "box " + std::to_string(b) + " has a non-finite corner");
        if (!(box.hi[k] > box.lo[k])) fail(ErrorKind::invalid_input, "box " + std::to_string(b) + " has non-positive extent");
      }
      for (int i = dim; i < 3; ++i) box.lo[static_cast<std::size_t>(i)] = box.hi[static_cast<std::size_t>(i)] = 0.0;
    }
    for (std::size_t a = 0; a < boxes.size(); ++a)
      for (std::size_t b = a + 1; b < boxes.size(); ++b)
        if (interiors_overlap(boxes[a], boxes[b]))
          fail(ErrorKind::invalid_input, "boxes " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
    return BoxUnion(dim, canonicalize(std::move(boxes)));
  }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }

  BoxUnion translated(const VecN& t) const {
    std::vector<Box> b(boxes_);
    for (auto& box : b)
      for (int i = 0; i < dim_; ++i) {
        box.lo[static_cast<std::size_t>(i)] += t[i];
        box.hi[static_cast<std::size_t>(i)] += t[i];
      }
    return BoxUnion(dim_, std::move(b));
  }

 private:
  BoxUnion(int dim, std::vector<Box> boxes) : dim_(dim), boxes_(std::move(boxes)) {}

  static bool interiors_overlap(const Box& a, const Box& b) {
    for (int i = 0; i < a.dim; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (std::min(a.hi[k], b.hi[k]) <= std::max(a.lo[k], b.lo[k])) return false;
    }
    return true;
  }

  static std::vector<Box> canonicalize(std::vector<Box> boxes) {
    bool merged = true;
    while (merged) {
      merged = false;
      std::sort(boxes.begin(), boxes.end());
      for (std::size_t a = 0; a < boxes.size() && !merged; ++a)
        for (std::size_t b = a + 1; b < boxes.size() && !merged; ++b)
          if (auto m = try_merge(boxes[a], boxes[b])) {
            boxes[a] = *m;
            boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(b));
            merged = true;
          }
    }
    return boxes;
  }

  static std::optional<Box> try_merge(const Box& a, const Box& b) {
    int axis = -1;
    for (int i = 0; i < a.dim; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (a.lo[k] == b.lo[k] && a.hi[k] == b.hi[k]) continue;
      if (axis >= 0) return std::nullopt;
      if (a.hi[k] != b.lo[k] && b.hi[k] != a.lo[k]) return std::nullopt;
      axis = i;
    }
    if (axis < 0) return std::nullopt;
    Box m = a;
    const auto k = static_cast<std::size_t>(axis);
    m.lo[k] = std::min(a.lo[k], b.lo[k]);
    m.hi[k] = std::max(a.hi[k], b.hi[k]);
    return m;
  }

  int dim_;
  std::vector<Box> boxes_;
};

namespace detail {

/// Rectilinear cell complex spanned by the box coordinates of one or more
/// unions, with one occupancy mask per union.
struct CellGrid {
  int dim{2};
  std::array<std::vector<double>, 3> coords;
  std::vector<std::vector<std::uint8_t>> masks;

  std::size_t count(int axis) const { return coords[static_cast<std::size_t>(axis)].size() - 1; }
  std::size_t cells() const {
    std::size_t c = 1;
    for (int i = 0; i < dim; ++i) c *= count(i);
    return c;
  }
  std::size_t index(const std::array<std::size_t, 3>& ijk) const {
    std::size_t idx = 0;
    for (int i = dim - 1; i >= 0; --i) idx = idx * count(i) + ijk[static_cast<std::size_t>(i)];
    return idx;
  }
  double width(int axis, std::size_t i) const {
    const auto& c = coords[static_cast<std::size_t>(axis)];
    return c[i + 1] - c[i];
  }
  double cell_volume(const std::array<std::size_t, 3>& ijk) const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= width(i, ijk[static_cast<std::size_t>(i)]);
    return v;
  }
  bool filled(std::size_t mask, const std::array<std::size_t, 3>& ijk) const { return masks[mask][index(ijk)] != 0; }

  template <typename F>
  void for_each_cell(F&& f) const {
    std::array<std::size_t, 3> ijk{0, 0, 0};
    const std::size_t nz = dim == 3 ? count(2) : 1;
    for (ijk[2] = 0; ijk[2] < nz; ++ijk[2])
      for (ijk[1] = 0; ijk[1] < count(1); ++ijk[1])
        for (ijk[0] = 0; ijk[0] < count(0); ++ijk[0]) f(ijk);
  }

  static CellGrid build(std::initializer_list<const BoxUnion*> unions) {
    CellGrid g;
    g.dim = (*unions.begin())->dim();
    for (const BoxUnion* u : unions) {
      if (u->dim() != g.dim) fail(ErrorKind::domain, "box-unions of different dimension");
      for (const auto& b : u->boxes())
        for (int i = 0; i < g.dim; ++i) {
          g.coords[static_cast<std::size_t>(i)].push_back(b.lo[static_cast<std::size_t>(i)]);
          g.coords[static_cast<std::size_t>(i)].push_back(b.hi[static_cast<std::size_t>(i)]);
        }
    }
    for (int i = 0; i < g.dim; ++i) {
      auto& c = g.coords[static_cast<std::size_t>(i)];
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    for (const BoxUnion* u : unions) {
      std::vector<std::uint8_t> mask(g.cells(), 0);
      for (const auto& b : u->boxes()) {
        std::array<std::size_t, 3> from{0, 0, 0}, to{1, 1, 1};
        for (int i = 0; i < g.dim; ++i) {
          const auto k = static_cast<std::size_t>(i);
          const auto& c = g.coords[k];
          from[k] = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), b.lo[k]) - c.begin());
          to[k] = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), b.hi[k]) - c.begin());
        }
        std::array<std::size_t, 3> ijk{};
        for (ijk[2] = from[2]; ijk[2] < to[2]; ++ijk[2])
          for (ijk[1] = from[1]; ijk[1] < to[1]; ++ijk[1])
            for (ijk[0] = from[0]; ijk[0] < to[0]; ++ijk[0]) mask[g.index(ijk)] = 1;
      }
      g.masks.push_back(std::move(mask));
    }
    return g;
  }
};

/// Exposed facet area per signed axis class: result[2*i] for +e_i, [2*i+1] for -e_i.
inline std::array<double, 6> class_masses(const CellGrid& g) {
  std::array<double, 6> m{};
  g.for_each_cell([&](const std::array<std::size_t, 3>& ijk) {
    if (!g.filled(0, ijk)) return;
    for (int axis = 0; axis < g.dim; ++axis) {
      const auto k = static_cast<std::size_t>(axis);
      double area = 1.0;
      for (int j = 0; j < g.dim; ++j)
        if (j != axis) area *= g.width(j, ijk[static_cast<std::size_t>(j)]);
      auto nb = ijk;
      const bool plus_open = ijk[k] + 1 == g.count(axis) || (nb[k] = ijk[k] + 1, !g.filled(0, nb));
      nb = ijk;
      const bool minus_open = ijk[k] == 0 || (nb[k] = ijk[k] - 1, !g.filled(0, nb));
      if (plus_open) m[2 * k] += area;
      if (minus_open) m[2 * k + 1] += area;
    }
  });
  return m;
}

}  // namespace detail

inline double volume(const BoxUnion& e) {
  double v = 0.0;
  for (const auto& b : e.boxes()) v += b.volume();
  return v;
}

/// Total exposed facet area per axis: A_i = mass of the +e_i and -e_i classes.
inline std::vector<double> axis_class_areas(const BoxUnion& e) {
  const auto g = detail::CellGrid::build({&e});
  const auto m = detail::class_masses(g);
  std::vector<double> a(static_cast<std::size_t>(e.dim()));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = m[2 * i] + m[2 * i + 1];
  return a;
}

inline double perimeter(const BoxUnion& e) {
  double p = 0.0;
  for (double a : axis_class_areas(e)) p += a;
  return p;
}

/// Atoms aggregated by the 2n signed axis normals.
inline SurfaceMeasure surface_measure(const BoxUnion& e) {
  const auto g = detail::CellGrid::build({&e});
  const auto m = detail::class_masses(g);
  SurfaceMeasure mu;
  mu.dim = e.dim();
  for (int i = 0; i < e.dim(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (m[2 * k] > 0.0) mu.atoms.push_back({VecN::unit(e.dim(), i), m[2 * k]});
    if (m[2 * k + 1] > 0.0) mu.atoms.push_back({-VecN::unit(e.dim(), i), m[2 * k + 1]});
  }
  return mu;
}

inline double circumradius(const BoxUnion& e) {
  double r = 0.0;
  for (const auto& b : e.boxes())
    for (int corner = 0; corner < (1 << e.dim()); ++corner) {
      double s = 0.0;
      for (int i = 0; i < e.dim(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double x = (corner >> i) & 1 ? b.hi[k] : b.lo[k];
        s += x * x;
      }
      r = std::max(r, std::sqrt(s));
    }
  return r;
}

inline RegularityReport is_regular_direction(const BoxUnion& e, const Direction& u) {
  return is_regular_direction(surface_measure(e), u);
}

inline double vertical_boundary_measure(const BoxUnion& e, const RigidFrame& frame) {
  return vertical_boundary_measure(surface_measure(e), frame);
}

inline double spherical_symmetral(const BoxUnion& e) {
  return std::pow(volume(e) / unit_ball_volume(e.dim()), 1.0 / e.dim());
}

/// Sections along coordinate axis `axis`. Base cells are the grid cells of the
/// remaining coordinates (in increasing axis order); sections are the maximal
/// runs of filled cells. Cells outside the essential projection are omitted.
inline ColumnStructure column_structure(const BoxUnion& e, int axis) {
  if (axis < 0 || axis >= e.dim()) fail(ErrorKind::domain, "section axis out of range");
  const auto g = detail::CellGrid::build({&e});
  std::array<int, 2> base{};
  for (int i = 0, j = 0; i < e.dim(); ++i)
    if (i != axis) base[static_cast<std::size_t>(j++)] = i;
  const int nb = e.dim() - 1;
  const std::size_t n0 = g.count(base[0]);
  const std::size_t n1 = nb == 2 ? g.count(base[1]) : 1;
  const auto& ax = g.coords[static_cast<std::size_t>(axis)];

  ColumnStructure cs;
  cs.dim = e.dim();
  cs.axis = axis;
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t i = 0; i < n0; ++i) {
      ColumnCell cell;
      std::array<std::size_t, 3> ijk{0, 0, 0};
      ijk[static_cast<std::size_t>(base[0])] = i;
      cell.lo[0] = g.coords[static_cast<std::size_t>(base[0])][i];
      cell.hi[0] = g.coords[static_cast<std::size_t>(base[0])][i + 1];
      if (nb == 2) {
        ijk[static_cast<std::size_t>(base[1])] = j;
        cell.lo[1] = g.coords[static_cast<std::size_t>(base[1])][j];
        cell.hi[1] = g.coords[static_cast<std::size_t>(base[1])][j + 1];
      }
      const auto k = static_cast<std::size_t>(axis);
      std::size_t t = 0;
      while (t < g.count(axis)) {
        ijk[k] = t;
        if (!g.filled(0, ijk)) {
          ++t;
          continue;
        }
        const std::size_t start = t;
        while (t < g.count(axis) && (ijk[k] = t, g.filled(0, ijk))) ++t;
        cell.intervals.push_back({ax[start], 0.0, ax[t], 0.0, -1, -1});
      }
      if (!cell.intervals.empty()) cs.cells.push_back(std::move(cell));
    }
  return cs;
}

/// Gradient of the section length along `axis` at base point `x` (n-1
/// coordinates). Box sections are locally constant, so the gradient is zero
/// away from cell boundaries.
inline std::vector<double> section_length_gradient(const BoxUnion& e, const std::array<double, 2>& x, int axis,
                                    double tol = kGenericPointTolerance) {
  const ColumnStructure cs = column_structure(e, axis);
  const int nb = e.dim() - 1;
  for (const auto& c : cs.cells) {
    bool inside = true;
    for (int i = 0; i < nb; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (std::abs(x[k] - c.lo[k]) <= tol || std::abs(x[k] - c.hi[k]) <= tol)
        fail(ErrorKind::non_generic_point, "base point lies on a column cell boundary");
      inside = inside && x[k] > c.lo[k] && x[k] < c.hi[k];
    }
    if (inside) return std::vector<double>(static_cast<std::size_t>(nb), 0.0);
  }
  fail(ErrorKind::domain, "base point outside the projection of the set");
}

/// Index of the coordinate axis parallel to u, or an unsupported-direction error.
inline int axis_of(const Direction& u, int dim) {
  if (u.dim() != dim) fail(ErrorKind::domain, "direction dimension mismatch");
  for (int i = 0; i < dim; ++i)
    if (std::abs(std::abs(u[i]) - 1.0) <= Direction::kUnitTolerance) return i;
  fail(ErrorKind::unsupported_direction, "box-unions are symmetrized only along coordinate axes");
}

/// Steiner symmetral along +-e_k: each column becomes [-l/2, l/2].
inline BoxUnion steiner_symmetrize(const BoxUnion& e, const Direction& u) {
  const int axis = axis_of(u, e.dim());
  const ColumnStructure cs = column_structure(e, axis);
  std::array<int, 2> base{};
  for (int i = 0, j = 0; i < e.dim(); ++i)
    if (i != axis) base[static_cast<std::size_t>(j++)] = i;
  std::vector<Box> out;
  for (const auto& c : cs.cells) {
    const double len = c.length_at(0.0);
    Box b;
    b.dim = e.dim();
    for (int j = 0; j < e.dim() - 1; ++j) {
      b.lo[static_cast<std::size_t>(base[static_cast<std::size_t>(j)])] = c.lo[static_cast<std::size_t>(j)];
      b.hi[static_cast<std::size_t>(base[static_cast<std::size_t>(j)])] = c.hi[static_cast<std::size_t>(j)];
    }
    b.lo[static_cast<std::size_t>(axis)] = -0.5 * len;
    b.hi[static_cast<std::size_t>(axis)] = 0.5 * len;
    out.push_back(b);
  }
  return BoxUnion::make(e.dim(), std::move(out));
}

/// Exact |E symmetric-difference F| on the common cell grid.
inline double symmetric_difference_distance(const BoxUnion& e, const BoxUnion& f) {
  const auto g = detail::CellGrid::build({&e, &f});
  double v = 0.0;
  g.for_each_cell([&](const std::array<std::size_t, 3>& ijk) {
    if (g.filled(0, ijk) != g.filled(1, ijk)) v += g.cell_volume(ijk);
  });
  return v;
}

/// Exact set inclusion E subset F (up to null sets).
inline bool contains(const BoxUnion& f, const BoxUnion& e) {
  const auto g = detail::CellGrid::build({&e, &f});
  bool inside = true;
  g.for_each_cell([&](const std::array<std::size_t, 3>& ijk) {
    if (g.filled(0, ijk) && !g.filled(1, ijk)) inside = false;
  });
  return inside;
}

namespace detail {

inline double distance_to_boxes(const BoxUnion& e, const std::array<double, 3>& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : e.boxes()) {
    double s = 0.0;
    for (int i = 0; i < e.dim(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double d = std::max({b.lo[k] - p[k], 0.0, p[k] - b.hi[k]});
      s += d * d;
    }
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

/// Samples on the exposed facets with spacing <= step.
inline std::vector<std::array<double, 3>> boundary_samples(const BoxUnion& e, double step) {
  const auto g = CellGrid::build({&e});
  std::vector<std::array<double, 3>> s;
  g.for_each_cell([&](const std::array<std::size_t, 3>& ijk) {
    if (!g.filled(0, ijk)) return;
    for (int axis = 0; axis < g.dim; ++axis) {
      const auto k = static_cast<std::size_t>(axis);
      for (int side = 0; side < 2; ++side) {
        auto nb = ijk;
        bool open;
        if (side == 0) open = ijk[k] == 0 || (nb[k] = ijk[k] - 1, !g.filled(0, nb));
        else open = ijk[k] + 1 == g.count(axis) || (nb[k] = ijk[k] + 1, !g.filled(0, nb));
        if (!open) continue;
        std::array<double, 3> p{};
        p[k] = g.coords[k][ijk[k] + static_cast<std::size_t>(side)];
        std::array<int, 2> other{};
        for (int i = 0, j = 0; i < g.dim; ++i)
          if (i != axis) other[static_cast<std::size_t>(j++)] = i;
        const auto o0 = static_cast<std::size_t>(other[0]);
        const int m0 = std::max(1, static_cast<int>(std::ceil(g.width(other[0], ijk[o0]) / step)));
        const int m1 = g.dim == 3 ? std::max(1, static_cast<int>(std::ceil(
                                                    g.width(other[1], ijk[static_cast<std::size_t>(other[1])]) / step)))
                                  : 0;
        for (int a = 0; a <= m0; ++a) {
          p[o0] = g.coords[o0][ijk[o0]] + g.width(other[0], ijk[o0]) * a / m0;
          if (g.dim == 2) {
            s.push_back(p);
            continue;
          }
          const auto o1 = static_cast<std::size_t>(other[1]);
          for (int b = 0; b <= m1; ++b) {
            p[o1] = g.coords[o1][ijk[o1]] + g.width(other[1], ijk[o1]) * b / m1;
            s.push_back(p);
          }
        }
      }
    }
  });
  return s;
}

}  // namespace detail

inline constexpr int kBoxHausdorffSamplesPerDiameter2D = 2048;
inline constexpr int kBoxHausdorffSamplesPerDiameter3D = 128;

/// Hausdorff distance between box-unions from facet samples of each set and
/// the exact point-to-union distance. The uncertainty is one sample step.
/// Samples per diameter default to 2048 (n = 2) and 128 (n = 3).
inline Estimate hausdorff_distance(const BoxUnion& a, const BoxUnion& b, int samples_per_diameter = 0) {
  if (a.dim() != b.dim()) fail(ErrorKind::domain, "box-unions of different dimension");
  if (samples_per_diameter <= 0)
    samples_per_diameter = a.dim() == 2 ? kBoxHausdorffSamplesPerDiameter2D : kBoxHausdorffSamplesPerDiameter3D;
  std::array<double, 3> lo{}, hi{};
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto* u : {&a, &b})
    for (const auto& box : u->boxes())
      for (std::size_t k = 0; k < static_cast<std::size_t>(a.dim()); ++k)
        lo[k] = std::min(lo[k], box.lo[k]), hi[k] = std::max(hi[k], box.hi[k]);
  double diam2 = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(a.dim()); ++k) diam2 += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  const double step = std::sqrt(diam2) / samples_per_diameter;
  double d = 0.0;
  for (const auto& p : detail::boundary_samples(a, step)) d = std::max(d, detail::distance_to_boxes(b, p));
  for (const auto& p : detail::boundary_samples(b, step)) d = std::max(d, detail::distance_to_boxes(a, p));
  return {d, step};
}

}  // namespace petty
