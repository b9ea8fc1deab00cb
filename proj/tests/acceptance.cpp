// Acceptance campaign: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "petty.hpp"

using namespace petty;

namespace {

constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

struct Line {
  int id;
  std::string text;
};
std::vector<Line> lines;

void report(int id, const char* name, bool pass, const std::string& detail) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s  %2d  %-28s ", pass ? "PASS" : "FAIL", id, name);
  lines.push_back({id, buf + detail});
  if (!pass) ++failures;
}

void info(int id, const std::string& text) { lines.push_back({id, "INFO          " + text}); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Worst perimeter margin P(E) - P(S_u E) over every symmetrization run here.
double worst_perimeter_margin = std::numeric_limits<double>::infinity();
long symmetrizations = 0;

void note_perimeters(double before, double after) {
  worst_perimeter_margin = std::min(worst_perimeter_margin, before - after);
  ++symmetrizations;
}

PolygonSet sym(const PolygonSet& e, const Direction& u) {
  PolygonSet s = steiner_symmetrize(e, u);
  note_perimeters(perimeter(e), perimeter(s));
  return s;
}

BoxUnion sym(const BoxUnion& e, const Direction& u) {
  BoxUnion s = steiner_symmetrize(e, u);
  note_perimeters(perimeter(e), perimeter(s));
  return s;
}

std::vector<Vec2> regular_polygon(int m) {
  std::vector<Vec2> v;
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * std::numbers::pi * i / m;
    v.push_back({std::cos(t), std::sin(t)});
  }
  return v;
}

/// Random direction with no boundary mass orthogonal to it in its frame.
Direction generic_direction(Rng& rng, const PolygonSet& e) {
  for (;;) {
    const Direction u = random_direction(rng, 2);
    if (vertical_boundary_measure(e, RigidFrame::with_last_axis(u)) == 0.0) return u;
  }
}

/// Section length along u at frame abscissa x by even-odd pairing of edge
/// crossings (independent of the column sweep).
double section_length_by_crossings(const PolygonSet& p, const Direction& u, double x) {
  const RigidFrame f = RigidFrame::with_last_axis(u);
  std::vector<double> ys;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = f.to_frame(p.vertex(i)), b = f.to_frame(p.vertex((i + 1) % n));
    if ((a.x <= x && x < b.x) || (b.x <= x && x < a.x)) ys.push_back(a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x));
  }
  std::sort(ys.begin(), ys.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < ys.size(); i += 2) s += ys[i + 1] - ys[i];
  return s;
}

void ball_equality() {
  const double bound = petty_bound(2);
  const double prod = petty_product(PolygonSet::make(regular_polygon(256))).product;
  const double rel = std::abs(prod - bound) / bound;
  report(1, "ball equality", rel <= 1e-3,
         fmt("256-gon product %.10f vs (pi/2)^2 %.10f, rel err %.2e (tol 1e-3)", prod, bound, rel));
}

void closed_forms() {
  const double sq = petty_product(PolygonSet::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}})).product;
  const double cube = petty_product(BoxUnion::make(3, {Box{3, {0, 0, 0}, {1, 1, 1}}})).product;
  const auto stair = BoxUnion::make(2, {Box{2, {0, 0, 0}, {1, 2, 0}}, Box{2, {1, 1, 0}, {2, 3, 0}}});
  const double before = petty_product(stair).product;
  const double after = petty_product(sym(stair, Direction::axis(2, 1))).product;
  const bool pass = std::abs(sq - 2.0) <= 1e-12 && std::abs(cube - 4.0 / 3.0) <= 1e-9 &&
                    std::abs(before - 4.0 / 3.0) <= 1e-12 && std::abs(after - 2.0) <= 1e-12;
  report(2, "closed-form products", pass,
         fmt("square %.17g, cube %.17g, staircase %.17g -> %.17g (exploratory)", sq, cube, before, after));
}

void bound_campaign() {
  Rng rng(kSeed, 3);
  double worst_slack = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  int cases = 0;
  std::array<double, 4> max_product{};  // by dimension
  for (int i = 0; i < 1000; ++i) {
    const PettyReport r = petty_product(random_star_polygon(rng));
    worst_slack = std::min(worst_slack, r.slack);
    max_product[2] = std::max(max_product[2], r.product);
    ++cases;
  }
  for (int i = 0; i < 1000; ++i) {
    const PettyReport r = petty_product(random_box_union(rng, 2 + i % 2));
    worst_slack = std::min(worst_slack, r.slack);
    max_product[static_cast<std::size_t>(r.dim)] = std::max(max_product[static_cast<std::size_t>(r.dim)], r.product);
    ++cases;
  }
  max_ratio = std::max(max_product[2] / petty_bound(2), max_product[3] / petty_bound(3));
  report(3, "petty bound", worst_slack >= -1e-9,
         fmt("%d sets, min slack %.6g (tol -1e-9); max product n=2 %.6f (bound - %.4f), n=3 %.6f (bound - %.4f)", cases,
             worst_slack, max_product[2], petty_bound(2) - max_product[2], max_product[3],
             petty_bound(3) - max_product[3]));
  info(3, fmt("strict gap on non-ball corpora (product <= bound - 1e-3): %s, max product / bound %.6f",
              max_product[2] <= petty_bound(2) - 1e-3 && max_product[3] <= petty_bound(3) - 1e-3 ? "yes" : "no",
              max_ratio));
}

void steiner_monotonicity() {
  Rng rng(kSeed, 4);
  double worst = std::numeric_limits<double>::infinity(), drift = 0.0;
  for (int i = 0; i < 200; ++i) {
    const PolygonSet e = random_star_polygon(rng);
    const Direction u = generic_direction(rng, e);
    const PolygonSet s = sym(e, u);
    worst = std::min(worst, petty_product(s).product + 1e-9 - petty_product(e).product);
    drift = std::max(drift, std::abs(volume(s) - volume(e)) / volume(e));
  }
  report(4, "steiner monotonicity", worst >= 0.0 && drift <= 1e-12,
         fmt("200 polygons in generic frames, min (after - before + 1e-9) %.3g, max volume drift %.2e (tol 1e-12)",
             worst, drift));
}

void affine_equivariance() {
  Rng rng(kSeed, 6);
  const SphericalGrid grid = circle_grid(4096);
  double disc = 0.0, prod_rel = 0.0;
  for (int i = 0; i < 20; ++i) {
    const PolygonSet p = random_star_polygon(rng);
    const double base = petty_product(p).product;
    for (int k = 0; k < 100; ++k) {
      const Mat2 a = random_sl2(rng);
      disc = std::max(disc, affine_image_check(p, a, grid));
      prod_rel = std::max(prod_rel, std::abs(petty_product(p.transformed(a)).product - base) / base);
    }
  }
  report(6, "affine equivariance", disc <= 1e-9 && prod_rel <= 1e-9,
         fmt("20 polygons x 100 SL(2): max support discrepancy %.2e, max product change %.2e (tol 1e-9)", disc,
             prod_rel));
}

void polar_inclusion() {
  Rng rng(kSeed, 7);
  const SphericalGrid grid = circle_grid(4096);
  double worst = 0.0;
  bool holds = true;
  for (int i = 0; i < 50; ++i) {
    const PolygonSet e = random_star_polygon(rng);
    const Direction u = generic_direction(rng, e);
    sym(e, u);
    const PolarInclusionReport r = polar_steiner_inclusion_check(e, u, grid);
    holds = holds && r.holds;
    worst = std::max(worst, r.worst_margin);
  }
  report(7, "polar body inclusion", holds,
         fmt("50 polygons, 4096 directions: max radial ratio %.15f (tol 1 + 1e-9)", worst));
}

double trace_perimeter_margin(const SymmetrizationTrace& t) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < t.steps.size(); ++i) {
    m = std::min(m, t.steps[i - 1].perimeter - t.steps[i].perimeter);
    ++symmetrizations;
  }
  return m;
}

void convergence() {
  const PolygonSet sq = PolygonSet::make({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
  const SymmetrizationTrace t = run_symmetrization(sq, {PolicyKind::cap_cover_greedy, kSeed, 32}, 500, 0.05);
  double r_rise = -std::numeric_limits<double>::infinity(), drift = 0.0;
  const double v0 = t.steps.front().volume;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    drift = std::max(drift, std::abs(t.steps[i].volume - v0) / v0);
    if (i > 0) r_rise = std::max(r_rise, t.steps[i].circumradius - t.steps[i - 1].circumradius);
  }
  worst_perimeter_margin = std::min(worst_perimeter_margin, trace_perimeter_margin(t));
  const double rel = t.steps.back().dh_to_ball / t.ball_radius;
  report(8, "convergence to the ball", t.converged && rel < 0.05 && r_rise <= 1e-12 && drift <= 1e-12,
         fmt("square, cap-cover-greedy (32): d_H/r %.4f after %zu steps; max circumradius rise %.2e; volume drift "
             "%.2e",
             rel, t.steps.size() - 1, r_rise, drift));
}

void projection_continuity() {
  const SphericalGrid grid = circle_grid(4096);
  std::string detail = "sup|h - 2|:";
  double prev = std::numeric_limits<double>::infinity(), at64 = 0.0;
  bool decreasing = true;
  for (int m : {8, 16, 32, 64, 128}) {
    const ConvexBody pi = projection_body(PolygonSet::make(regular_polygon(m)));
    double sup = 0.0;
    for (const auto& u : grid.nodes) sup = std::max(sup, std::abs(support(pi, u.vec()) - 2.0));
    decreasing = decreasing && sup < prev;
    prev = sup;
    if (m == 64) at64 = sup;
    detail += fmt(" m=%d %.3e", m, sup);
  }
  report(9, "projection body continuity", decreasing && at64 <= 5e-3, detail + " (tol 5e-3 at m=64, decreasing)");
}

void analysis_identities() {
  Rng rng(kSeed, 10);
  double coarea = 0.0, grad = 0.0;
  for (int i = 0; i < 20; ++i) {
    const PolygonSet p = random_star_polygon(rng);
    for (const auto& g : {ScalarField::constant(1.0), ScalarField::x_squared(),
                          ScalarField::half_plane({std::cos(0.3 * i), std::sin(0.3 * i)}, rng.uniform(-0.5, 0.5))}) {
      const CoareaResult c = coarea_check(p, g);
      coarea = std::max(coarea, std::abs(c.lhs - c.rhs));
    }
    const Direction u = generic_direction(rng, p);
    const RigidFrame f = RigidFrame::with_last_axis(u);
    const ColumnStructure cs = column_structure(p, f);
    const double lo = cs.cells.front().lo[0], hi = cs.cells.back().hi[0];
    const double h = 1e-6 * (hi - lo);
    int done = 0;
    while (done < 100) {
      const double x = rng.uniform(lo, hi);
      bool generic = true;
      for (const auto& c : cs.cells) generic = generic && std::abs(x - c.lo[0]) > 10 * h && std::abs(x - c.hi[0]) > 10 * h;
      if (!generic) continue;
      const double fd =
          (section_length_by_crossings(p, u, x + h) - section_length_by_crossings(p, u, x - h)) / (2.0 * h);
      grad = std::max(grad, std::abs(section_length_gradient(p, x, f) - fd));
      ++done;
    }
  }
  report(10, "analysis identities", coarea <= 1e-9 && grad <= 1e-5,
         fmt("20 polygons: max coarea |lhs - rhs| %.2e (tol 1e-9); 2000 abscissae: max |grad - fd| %.2e (tol 1e-5)",
             coarea, grad));
}

}  // namespace

int main() {
  try {
    ball_equality();
    closed_forms();
    bound_campaign();
    steiner_monotonicity();
    affine_equivariance();
    polar_inclusion();
    convergence();
    projection_continuity();
    analysis_identities();
    // Also random box-union symmetrizations, so the perimeter gate sees both families.
    Rng rng(kSeed, 5);
    for (int i = 0; i < 200; ++i) {
      const int n = 2 + i % 2;
      sym(random_box_union(rng, n), Direction::axis(n, rng.uniform_int(0, n - 1)));
    }
    report(5, "perimeter monotonicity", worst_perimeter_margin >= -1e-9,
           fmt("%ld symmetrizations: min P(E) - P(S E) %.3g (tol -1e-9)", symmetrizations, worst_perimeter_margin));
  } catch (const std::exception& e) {
    for (const auto& l : lines) std::printf("%s\n", l.text.c_str());
    std::printf("FAIL          aborted: %s\n", e.what());
    return 1;
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  for (const auto& l : lines) std::printf("%s\n", l.text.c_str());
  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
