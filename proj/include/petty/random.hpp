#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "petty/box_union.hpp"
#include "petty/polygon.hpp"
#include "petty/vec.hpp"

namespace petty {

/// One splitmix64 step.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream `id` under `seed`.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  s = a ^ (id * 0xD1B54A32D192ED03ULL);
  return splitmix64(s);
}

/// mt19937_64 with portable double and integer draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : eng_(stream_seed(seed, stream)) {}

  std::uint64_t next() { return eng_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

inline Direction random_direction(Rng& rng, int n) {
  if (n == 2) return Direction::from_angle(rng.uniform(0.0, 2.0 * std::numbers::pi));
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Direction::normalize(VecN(s * std::cos(phi), s * std::sin(phi), z));
}

inline constexpr int kMinStarVertices = 5;
inline constexpr int kMaxStarVertices = 40;

/// Star-shaped polygon around the origin: sorted uniform angles, radii in
/// [0.5, 1.5], then a random rotation.
inline PolygonSet random_star_polygon(Rng& rng) {
  for (;;) {
    const int m = rng.uniform_int(kMinStarVertices, kMaxStarVertices);
    std::vector<double> ang(static_cast<std::size_t>(m));
    for (auto& a : ang) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::sort(ang.begin(), ang.end());
    const double rot = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<Vec2> pts;
    pts.reserve(ang.size());
    for (double a : ang) {
      const double r = rng.uniform(0.5, 1.5);
      pts.push_back({r * std::cos(a + rot), r * std::sin(a + rot)});
    }
    try {
      return PolygonSet::make(std::move(pts));
    } catch (const Error&) {
      // gap of more than pi between angles, or a degenerate draw
    }
  }
}

/// Union of random cells of a g^n grid whose column widths are drawn from
/// [0.5, 1.5]; g = 4 in the plane and 3 in space.
inline BoxUnion random_box_union(Rng& rng, int dim) {
  const int g = dim == 2 ? 4 : 3;
  std::array<std::vector<double>, 3> coord;
  for (int k = 0; k < dim; ++k) {
    auto& c = coord[static_cast<std::size_t>(k)];
    c.push_back(0.0);
    for (int i = 0; i < g; ++i) c.push_back(c.back() + rng.uniform(0.5, 1.5));
  }
  const int cells = dim == 2 ? g * g : g * g * g;
  for (;;) {
    std::vector<Box> boxes;
    for (int idx = 0; idx < cells; ++idx) {
      if (rng.uniform() >= 0.5) continue;
      Box b;
      b.dim = dim;
      int r = idx;
      for (int k = 0; k < dim; ++k) {
        const int i = r % g;
        r /= g;
        const auto& c = coord[static_cast<std::size_t>(k)];
        b.lo[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(i)];
        b.hi[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(i + 1)];
      }
      boxes.push_back(b);
    }
    if (!boxes.empty()) return BoxUnion::make(dim, std::move(boxes));
  }
}

/// Random element of SL(2): shear * rotation * shear, rescaled to det 1.
inline Mat2 random_sl2(Rng& rng) {
  const Mat2 m = Mat2::shear_x(rng.uniform(-1.0, 1.0)) * Mat2::rotation(rng.uniform(0.0, 2.0 * std::numbers::pi)) *
                 Mat2::shear_y(rng.uniform(-1.0, 1.0));
  const double s = 1.0 / std::sqrt(m.det());
  return {m.a * s, m.b * s, m.c * s, m.d * s};
}

}  // namespace petty
