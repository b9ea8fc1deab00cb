#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "petty/error.hpp"
#include "petty/planar.hpp"
#include "petty/sphere_grid.hpp"
#include "petty/vec.hpp"

namespace petty {

/// Polytope given by facets {x : normal_i . x <= offset_i} and its vertices.
struct FacetPolytope {
  int dim{2};
  std::vector<VecN> normals;  // unit outer normals
  std::vector<double> offsets;
  std::vector<VecN> vertices;  // counterclockwise in 2D
};

/// Origin-centered zonotope: sum of the segments [-g_i, g_i].
struct Zonotope {
  int dim{2};
  std::vector<VecN> generators;
};

struct Ball {
  int dim{2};
  double radius{1.0};
};

class ConvexBody;

/// Polar K* of the wrapped body.
struct PolarOf {
  std::shared_ptr<const ConvexBody> body;
};

inline constexpr double kFacetConsistencyTolerance = 1e-10;

/// Convex body containing the origin in its interior, evaluated through its
/// support function.
class ConvexBody {
 public:
  using Rep = std::variant<FacetPolytope, Zonotope, Ball, PolarOf>;

  /// Convex polygon from points (hull taken); origin must be interior.
  static ConvexBody polygon(std::span<const Vec2> points) {
    const auto hull = planar::convex_hull(std::vector<Vec2>(points.begin(), points.end()));
    if (hull.size() < 3) fail(ErrorKind::invalid_body, "polygon hull is degenerate");
    FacetPolytope p;
    p.dim = 2;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
      const Vec2 e = b - a;
      const Vec2 nrm = Vec2{e.y, -e.x} / e.norm();
      p.normals.emplace_back(nrm);
      p.offsets.push_back(dot(nrm, a));
      p.vertices.emplace_back(a);
    }
    return facets(std::move(p));
  }

  /// Box [-a_1, a_1] x ... x [-a_n, a_n].
  static ConvexBody box(std::span<const double> half_widths) {
    const int n = static_cast<int>(half_widths.size());
    if (n != 2 && n != 3) fail(ErrorKind::domain, "box dimension must be 2 or 3");
    FacetPolytope p;
    p.dim = n;
    for (double a : half_widths)
      if (!(a > 0.0)) fail(ErrorKind::invalid_body, "box half-widths must be positive");
    if (n == 2) {
      const double a = half_widths[0], b = half_widths[1];
      p.vertices = {VecN(a, -b), VecN(a, b), VecN(-a, b), VecN(-a, -b)};
      p.normals = {VecN(1.0, 0.0), VecN(0.0, 1.0), VecN(-1.0, 0.0), VecN(0.0, -1.0)};
      p.offsets = {a, b, a, b};
    } else {
      for (int i = 0; i < 3; ++i) {
        const double a = half_widths[static_cast<std::size_t>(i)];
        p.normals.push_back(VecN::unit(3, i));
        p.offsets.push_back(a);
        p.normals.push_back(-VecN::unit(3, i));
        p.offsets.push_back(a);
      }
      for (int c = 0; c < 8; ++c)
        p.vertices.emplace_back(c & 1 ? half_widths[0] : -half_widths[0], c & 2 ? half_widths[1] : -half_widths[1],
                                c & 4 ? half_widths[2] : -half_widths[2]);
    }
    return facets(std::move(p));
  }

  /// Validates facet/vertex consistency and origin interiority.
  static ConvexBody facets(FacetPolytope p) {
    if (p.normals.size() != p.offsets.size() || p.normals.empty() || p.vertices.empty())
      fail(ErrorKind::invalid_body, "facet polytope needs matching normals, offsets and vertices");
    for (std::size_t i = 0; i < p.normals.size(); ++i) {
      if (!(p.offsets[i] > 0.0)) fail(ErrorKind::invalid_body, "origin is not interior (facet offset <= 0)");
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& v : p.vertices) h = std::max(h, dot(v, p.normals[i]));
      if (std::abs(h - p.offsets[i]) > kFacetConsistencyTolerance * (1.0 + std::abs(p.offsets[i])))
        fail(ErrorKind::invalid_body, "facet offset inconsistent with vertices");
    }
    return ConvexBody(std::move(p));
  }

  static ConvexBody zonotope(int dim, std::vector<VecN> generators) {
    Zonotope z{dim, std::move(generators)};
    if (!spans_space(z)) fail(ErrorKind::invalid_body, "zonotope generators do not span the space");
    return ConvexBody(std::move(z));
  }

  static ConvexBody ball(int dim, double radius) {
    if (!(radius > 0.0)) fail(ErrorKind::invalid_body, "ball radius must be positive");
    return ConvexBody(Ball{dim, radius});
  }

  /// K*; the polar of a polar is the original body.
  static ConvexBody polar(const ConvexBody& k) {
    if (const auto* p = std::get_if<PolarOf>(&k.rep_)) return *p->body;
    return ConvexBody(PolarOf{std::make_shared<const ConvexBody>(k)});
  }

  int dim() const {
    return std::visit(
        [](const auto& r) -> int {
          if constexpr (std::is_same_v<std::decay_t<decltype(r)>, PolarOf>) return r.body->dim();
          else return r.dim;
        },
        rep_);
  }

  const Rep& rep() const { return rep_; }

 private:
  explicit ConvexBody(Rep r) : rep_(std::move(r)) {}

  static bool spans_space(const Zonotope& z) {
    if (z.dim == 2) {
      for (std::size_t i = 0; i < z.generators.size(); ++i)
        for (std::size_t j = i + 1; j < z.generators.size(); ++j)
          if (std::abs(cross(z.generators[i].xy(), z.generators[j].xy())) > 0.0) return true;
      return false;
    }
    for (std::size_t i = 0; i < z.generators.size(); ++i)
      for (std::size_t j = i + 1; j < z.generators.size(); ++j)
        for (std::size_t k = j + 1; k < z.generators.size(); ++k)
          if (std::abs(dot(cross(z.generators[i], z.generators[j]), z.generators[k])) > 0.0) return true;
    return false;
  }

  Rep rep_;
};

inline double support(const ConvexBody& k, const VecN& z);

namespace detail {

/// Vertices (counterclockwise) of a planar zonotope, generators merged by
/// direction.
inline std::vector<Vec2> zonogon_vertices(const Zonotope& z) {
  std::vector<Vec2> g;
  for (const auto& v : z.generators) {
    Vec2 w = v.xy();
    if (w.x == 0.0 && w.y == 0.0) continue;
    if (w.y < 0.0 || (w.y == 0.0 && w.x < 0.0)) w = -w;  // angle in [0, pi)
    g.push_back(w);
  }
  std::sort(g.begin(), g.end(), [](const Vec2& a, const Vec2& b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
  std::vector<Vec2> merged;
  for (const auto& w : g) {
    if (!merged.empty() && cross(merged.back(), w) == 0.0) merged.back() += w;
    else merged.push_back(w);
  }
  Vec2 p{0.0, 0.0};
  for (const auto& w : merged) p -= w;
  std::vector<Vec2> out;
  out.reserve(2 * merged.size());
  for (const auto& w : merged) {
    out.push_back(p);
    p += w * 2.0;
  }
  for (const auto& w : merged) {
    out.push_back(p);
    p -= w * 2.0;
  }
  return out;
}

}  // namespace detail

/// Counterclockwise vertices of a planar body; balls have none.
inline std::vector<Vec2> polygon_vertices(const ConvexBody& k);

/// Exact polar of a planar polygon: the edge with outer normal nu and support
/// h becomes the vertex nu / h.
inline FacetPolytope polar_polygon(const ConvexBody& k) {
  if (k.dim() != 2) fail(ErrorKind::domain, "polar_polygon needs a planar body");
  const auto v = polygon_vertices(k);
  const std::size_t m = v.size();
  FacetPolytope p;
  p.dim = 2;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % m];
    const Vec2 e = b - a;
    const Vec2 nrm = Vec2{e.y, -e.x} / e.norm();
    const double h = dot(nrm, a);
    if (!(h > 0.0)) fail(ErrorKind::domain, "origin is not interior to the polygon");
    p.vertices.emplace_back(nrm / h);
  }
  // Facet of K* dual to vertex v_{i+1} of K joins polar vertices i and i+1.
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 w = v[(i + 1) % m];
    const double r = w.norm();
    p.normals.emplace_back(w / r);
    p.offsets.push_back(1.0 / r);
  }
  return p;
}

inline std::vector<Vec2> polygon_vertices(const ConvexBody& k) {
  if (k.dim() != 2) fail(ErrorKind::domain, "polygon vertices need a planar body");
  return std::visit(
      [](const auto& r) -> std::vector<Vec2> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FacetPolytope>) {
          std::vector<Vec2> out;
          for (const auto& v : r.vertices) out.push_back(v.xy());
          return out;
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return detail::zonogon_vertices(r);
        } else if constexpr (std::is_same_v<T, Ball>) {
          fail(ErrorKind::domain, "a ball has no polygon representation");
        } else {
          std::vector<Vec2> out;
          for (const auto& v : polar_polygon(*r.body).vertices) out.push_back(v.xy());
          return out;
        }
      },
      k.rep());
}

/// Sup of (u . z) / h_K(u) over the default sphere grid: the support of K*
/// for bodies without an exact polar (3D zonotopes).
inline double polar_support_by_rays(const ConvexBody& k, const VecN& z) {
  static const SphericalGrid grid = sphere_grid();
  double best = 0.0;
  for (const auto& u : grid.nodes) best = std::max(best, dot(u.vec(), z) / support(k, u.vec()));
  return best;
}

/// h_K(z) = max over z' in K of z . z'.
inline double support(const ConvexBody& k, const VecN& z) {
  return std::visit(
      [&z, &k](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FacetPolytope>) {
          double h = -std::numeric_limits<double>::infinity();
          for (const auto& v : r.vertices) h = std::max(h, dot(v, z));
          return h;
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          double h = 0.0;
          for (const auto& g : r.generators) h += std::abs(dot(g, z));
          return h;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return r.radius * z.norm();
        } else {
          // K* = conv{nu_i / h_i} for a facet polytope K.
          const ConvexBody& inner = *r.body;
          if (const auto* fp = std::get_if<FacetPolytope>(&inner.rep())) {
            double h = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < fp->normals.size(); ++i) h = std::max(h, dot(fp->normals[i], z) / fp->offsets[i]);
            return h;
          }
          if (const auto* b = std::get_if<Ball>(&inner.rep())) return z.norm() / b->radius;
          if (k.dim() == 2) {
            double h = -std::numeric_limits<double>::infinity();
            for (const auto& v : polar_polygon(inner).vertices) h = std::max(h, dot(v, z));
            return h;
          }
          return polar_support_by_rays(inner, z);
        }
      },
      k.rep());
}

/// rho_K(u) = max{lambda >= 0 : lambda u in K}; for K = L*, exactly 1 / h_L(u).
inline double radial(const ConvexBody& k, const Direction& u) {
  if (const auto* p = std::get_if<PolarOf>(&k.rep())) {
    const double h = support(*p->body, u.vec());
    if (!(h > 0.0)) fail(ErrorKind::invalid_body, "support function is not positive");
    return 1.0 / h;
  }
  if (const auto* b = std::get_if<Ball>(&k.rep())) return b->radius;
  if (const auto* fp = std::get_if<FacetPolytope>(&k.rep())) {
    double rho = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fp->normals.size(); ++i) {
      const double c = dot(fp->normals[i], u.vec());
      if (c > 0.0) rho = std::min(rho, fp->offsets[i] / c);
    }
    return rho;
  }
  // K = (K*)*, so rho_K = 1 / h_{K*}.
  const double h = support(ConvexBody::polar(k), u.vec());
  if (!(h > 0.0)) fail(ErrorKind::invalid_body, "polar support is not positive");
  return 1.0 / h;
}

/// Volume together with an absolute error estimate (0 for exact paths).
struct VolumeEstimate {
  double value;
  double error;
};

namespace detail {

inline double radial_volume(const ConvexBody& k, const SphericalGrid& grid) {
  return integrate_sphere(grid, [&k, &grid](const Direction& u) {
           const double h = support(k, u.vec());
           if (!(h > 0.0)) fail(ErrorKind::invalid_body, "support function is not positive on the grid");
           return std::pow(h, -grid.dim);
         }) /
         grid.dim;
}

}  // namespace detail

/// |K*|. Planar bodies: exact shoelace area of the polar polygon. In 3D:
/// (1/3) * integral of h_K^{-3} over the sphere, with the error estimated as
/// the change from a grid of half the resolution in each angle.
inline VolumeEstimate polar_volume(const ConvexBody& k, const SphericalGrid& grid) {
  if (const auto* b = std::get_if<Ball>(&k.rep())) return {unit_ball_volume(b->dim) / std::pow(b->radius, b->dim), 0.0};
  if (k.dim() == 2) {
    const auto p = polar_polygon(k);
    std::vector<Vec2> v;
    for (const auto& q : p.vertices) v.push_back(q.xy());
    return {planar::signed_area(v), 0.0};
  }
  if (grid.dim != 3) fail(ErrorKind::domain, "grid dimension does not match the body");
  const double fine = detail::radial_volume(k, grid);
  if (grid.n_theta < 4 || grid.n_phi < 8) return {fine, std::numeric_limits<double>::infinity()};
  const int coarse_theta = std::max(2, (grid.n_theta / 2) & ~1);
  const int coarse_phi = std::max(4, (grid.n_phi / 2) & ~3);
  const double coarse = detail::radial_volume(k, sphere_grid(coarse_theta, coarse_phi));
  return {fine, std::abs(fine - coarse)};
}

/// Volume of a convex body (exact for planar polygons and balls).
inline VolumeEstimate volume(const ConvexBody& k, const SphericalGrid& grid) {
  if (const auto* b = std::get_if<Ball>(&k.rep())) return {unit_ball_volume(b->dim) * std::pow(b->radius, b->dim), 0.0};
  if (k.dim() == 2) return {planar::signed_area(polygon_vertices(k)), 0.0};
  return polar_volume(ConvexBody::polar(k), grid);
}

/// Hausdorff distance of convex bodies: max over the grid of |h_a - h_b|.
inline double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, const SphericalGrid& grid) {
  if (a.dim() != b.dim() || a.dim() != grid.dim) fail(ErrorKind::domain, "dimension mismatch");
  double d = 0.0;
  for (const auto& u : grid.nodes) d = std::max(d, std::abs(support(a, u.vec()) - support(b, u.vec())));
  return d;
}

/// max |x| over K.
inline double circumradius(const ConvexBody& k) {
  if (const auto* b = std::get_if<Ball>(&k.rep())) return b->radius;
  if (const auto* fp = std::get_if<FacetPolytope>(&k.rep())) {
    double r = 0.0;
    for (const auto& v : fp->vertices) r = std::max(r, v.norm());
    return r;
  }
  if (k.dim() == 2) {
    double r = 0.0;
    for (const auto& v : polygon_vertices(k)) r = std::max(r, v.norm());
    return r;
  }
  fail(ErrorKind::domain, "circumradius is not available for this 3D body");
}

/// Steiner symmetral of a planar convex body about u^perp, built from the
/// chord midpoint form {(x', (y1 + y2) / 2) : (x', y1), (x', -y2) in K}:
/// chords are measured at every vertex abscissa and the hull is taken.
inline ConvexBody steiner_symmetrize_convex(const ConvexBody& k, const Direction& u) {
  if (k.dim() != 2 || u.dim() != 2) fail(ErrorKind::domain, "convex Steiner symmetrization is planar");
  if (const auto* b = std::get_if<Ball>(&k.rep())) return ConvexBody::ball(2, b->radius);
  const RigidFrame f = RigidFrame::with_last_axis(u);
  std::vector<Vec2> q;
  for (const auto& v : polygon_vertices(k)) q.push_back(f.to_frame(v));
  const std::size_t m = q.size();
  std::vector<Vec2> pts;
  for (const auto& v : q) {
    double top = -std::numeric_limits<double>::infinity(), bot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 a = q[i], b = q[(i + 1) % m];
      const double lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
      if (v.x < lo || v.x > hi) continue;
      if (a.x == b.x) {
        top = std::max({top, a.y, b.y});
        bot = std::min({bot, a.y, b.y});
        continue;
      }
      const double y = v.x == a.x ? a.y : v.x == b.x ? b.y : a.y + (v.x - a.x) * (b.y - a.y) / (b.x - a.x);
      top = std::max(top, y);
      bot = std::min(bot, y);
    }
    const double half = 0.5 * (top - bot);
    pts.push_back(f.to_world(Vec2{v.x, half}));
    pts.push_back(f.to_world(Vec2{v.x, -half}));
  }
  return ConvexBody::polygon(pts);
}

/// Bisection settings for the inclusion predicate.
inline constexpr double kRootResidual = 1e-10;
inline constexpr int kMaxBisection = 200;
inline constexpr double kInclusionSlack = 1e-9;

struct InclusionWitness {
  VecN base;   // x' (last coordinate 0)
  double t;    // h_K(x', t) = 1
  double s;    // h_K(x', -s) = 1
  double h_l;  // h_L(x', (t + s) / 2) > 1
};

struct InclusionVerdict {
  bool holds;
  int checked;
  int skipped;  // sampled x' with no point of h_K(x', .) = 1
  std::optional<InclusionWitness> witness;
};

/// Sampled test of S K* subset L* (S = Steiner symmetrization along the last
/// axis) through the criterion: whenever h_K(x', t) = 1 = h_K(x', -s) with
/// t != -s, then h_L(x', (t + s) / 2) <= 1. Roots of the convex function
/// t -> h_K(x', t) are located by golden-section minimization followed by
/// bisection on each side.
inline InclusionVerdict lyz_inclusion_predicate(const ConvexBody& k, const ConvexBody& l, int samples,
                                                std::uint64_t seed = 1) {
  const int n = k.dim();
  if (l.dim() != n) fail(ErrorKind::domain, "bodies of different dimension");
  if (samples < 1) fail(ErrorKind::domain, "sample count must be positive");
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](double a, double b) {
    return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const VecN up = VecN::unit(n, n - 1);
  const double h_up = support(k, up), h_down = support(k, -up);
  std::array<double, 2> reach{};
  for (int i = 0; i < n - 1; ++i)
    reach[static_cast<std::size_t>(i)] =
        1.5 / std::min(support(k, VecN::unit(n, i)), support(k, -VecN::unit(n, i)));

  InclusionVerdict verdict{true, 0, 0, std::nullopt};
  for (int sample = 0; sample < samples; ++sample) {
    VecN base(n);
    for (int i = 0; i < n - 1; ++i) base[i] = uniform(-reach[static_cast<std::size_t>(i)], reach[static_cast<std::size_t>(i)]);
    const auto f = [&](double t) {
      VecN z = base;
      z[n - 1] = t;
      return support(k, z);
    };
    // f(t) >= |t| h_K(0, +-1) - h_K(-x', 0), so f > f(0) + 1 outside [-T, T].
    const double bound = (f(0.0) + 1.0 + support(k, -base)) / std::min(h_up, h_down);
    double a = -bound, b = bound;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < kMaxBisection && b - a > 1e-15 * (1.0 + bound); ++it) {
      const double c = b - phi * (b - a), d = a + phi * (b - a);
      if (f(c) <= f(d)) b = d; else a = c;
    }
    const double t_min = 0.5 * (a + b);
    if (!(f(t_min) < 1.0)) {
      ++verdict.skipped;
      continue;
    }
    const auto root = [&](double inside, double outside) {
      for (int it = 0; it < kMaxBisection; ++it) {
        const double mid = 0.5 * (inside + outside);
        const double fm = f(mid);
        if (std::abs(fm - 1.0) <= kRootResidual) return mid;
        if (fm < 1.0) inside = mid; else outside = mid;
      }
      return 0.5 * (inside + outside);
    };
    const double t_hi = root(t_min, bound);
    const double t_lo = root(t_min, -bound);
    ++verdict.checked;
    // (t, s) = (t_hi, -t_lo) and (t_lo, -t_hi).
    for (const double mid : {0.5 * (t_hi - t_lo), 0.5 * (t_lo - t_hi)}) {
      VecN z = base;
      z[n - 1] = mid;
      const double hl = support(l, z);
      if (hl > 1.0 + kInclusionSlack) {
        verdict.holds = false;
        const bool first = mid > 0.0;
        verdict.witness = InclusionWitness{base, first ? t_hi : t_lo, first ? -t_lo : -t_hi, hl};
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace petty
