#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace petty {

/// One section interval (a(x'), b(x')) over a base cell. Endpoints are affine
/// in the first base coordinate: a(x') = lo + lo_slope * (x'_0 - cell.lo[0]).
/// Box-union columns have zero slopes.
struct SectionInterval {
  double lo{0.0};
  double lo_slope{0.0};
  double hi{0.0};
  double hi_slope{0.0};
  int lo_edge{-1};  // polygon edge carrying the lower endpoint, -1 for boxes
  int hi_edge{-1};

  double lower_at(double offset) const { return lo + lo_slope * offset; }
  double upper_at(double offset) const { return hi + hi_slope * offset; }
};

/// An (n-1)-dimensional base box of the projection together with the
/// section of the set above it.
struct ColumnCell {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
  std::vector<SectionInterval> intervals;  // sorted, disjoint

  /// Half the number of section endpoints.
  std::size_t multiplicity() const { return intervals.size(); }

  double base_measure(int base_dim) const {
    double m = 1.0;
    for (int i = 0; i < base_dim; ++i) m *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    return m;
  }

  /// Total section length at first-coordinate offset `t` from `lo[0]`.
  double length_at(double t) const {
    double s = 0.0;
    for (const auto& iv : intervals) s += iv.upper_at(t) - iv.lower_at(t);
    return s;
  }
};

/// Decomposition of a set into sections along one axis: the base cells cover
/// the essential projection, and every section is a finite interval union.
struct ColumnStructure {
  int dim{2};
  int axis{1};  // zero-based index of the section axis (frame coordinates)
  std::vector<ColumnCell> cells;

  /// Sum over cells of base measure times total section length. Endpoints are
  /// affine, so the midpoint value is the cell average.
  double volume() const {
    double v = 0.0;
    for (const auto& c : cells) v += c.base_measure(dim - 1) * c.length_at(0.5 * (c.hi[0] - c.lo[0]));
    return v;
  }
};

}  // namespace petty
