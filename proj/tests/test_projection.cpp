#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "petty.hpp"

using namespace petty;

namespace {

PolygonSet unit_square() { return PolygonSet::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
Box box2(double x0, double y0, double x1, double y1) { return Box{2, {x0, y0, 0}, {x1, y1, 0}}; }
BoxUnion staircase() { return BoxUnion::make(2, {box2(0, 0, 1, 2), box2(1, 1, 2, 3)}); }

}  // namespace

TEST(ProjectionBody, SquareIsTheUnitBox) {
  const auto pi = projection_body(unit_square());
  for (const auto& u : circle_grid(64).nodes)
    EXPECT_NEAR(support(pi, u.vec()), std::abs(u[0]) + std::abs(u[1]), 1e-15);
}

TEST(ProjectionBody, SupportMatchesEdgeSum) {
  Rng rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_star_polygon(rng);
    const auto pi = projection_body(p);
    for (int i = 0; i < 10; ++i) {
      const Vec2 z = random_direction(rng, 2).xy() * rng.uniform(0.2, 3.0);
      EXPECT_NEAR(support(pi, VecN(z)), oracle::projection_support(p.vertices(), z), 1e-12);
    }
  }
}

TEST(ProjectionBody, StaircaseHalfWidths) {
  const auto a = axis_class_half_widths(surface_measure(staircase()));
  ASSERT_TRUE(a.has_value());
  EXPECT_DOUBLE_EQ((*a)[0], 3.0);
  EXPECT_DOUBLE_EQ((*a)[1], 2.0);
  const auto pi = projection_body(staircase());
  EXPECT_DOUBLE_EQ(support(pi, VecN(1.0, 0.0)), 3.0);
  EXPECT_DOUBLE_EQ(support(pi, VecN(0.0, 1.0)), 2.0);
  EXPECT_FALSE(axis_class_half_widths(surface_measure(unit_square().rotated(0.3))).has_value());
}

TEST(ProjectionBody, BoxClosedFormAgreesWithZonotope) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const auto e = random_box_union(rng, n);
    const auto mu = surface_measure(e);
    const auto box = projection_body(e);
    const auto zono = projection_body(mu);
    for (int i = 0; i < 20; ++i) {
      const VecN z = random_direction(rng, n).vec();
      EXPECT_NEAR(support(box, z), support(zono, z), 1e-12);
    }
  }
}

TEST(ProjectionBody, RegularPolygonApproachesTwiceTheBall) {
  // Pi B = 2 B in the plane.
  const auto p = PolygonSet::make(oracle::regular_polygon(64));
  const auto pi = projection_body(p);
  double worst = 0.0;
  for (const auto& u : circle_grid().nodes) worst = std::max(worst, std::abs(support(pi, u.vec()) - 2.0));
  EXPECT_LE(worst, 5e-3);
}

TEST(ProjectionBody, ContinuityInTheNumberOfSides) {
  double prev = 1e300;
  for (int m : {8, 16, 32, 64, 128}) {
    const auto pi = projection_body(PolygonSet::make(oracle::regular_polygon(m)));
    double worst = 0.0;
    for (const auto& u : circle_grid().nodes) worst = std::max(worst, std::abs(support(pi, u.vec()) - 2.0));
    EXPECT_LT(worst, prev);
    prev = worst;
  }
}

TEST(ProjectionBody, EmptyMeasureIsRejected) {
  SurfaceMeasure mu;
  mu.dim = 2;
  try {
    projection_body(mu);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(PolarProjectionVolume, Examples) {
  EXPECT_NEAR(polar_projection_volume(unit_square()).value, 2.0, 1e-15);
  const auto cube = BoxUnion::make(3, {Box{3, {0, 0, 0}, {1, 1, 1}}});
  EXPECT_NEAR(polar_projection_volume(cube).value, 4.0 / 3.0, 1e-15);
  const auto disk = PolygonSet::make(oracle::regular_polygon(1024));
  EXPECT_NEAR(polar_projection_volume(disk).value, std::numbers::pi / 4.0, 1e-4);
}

TEST(PolarProjectionVolume, SurfaceMeasureRouteAgrees) {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_star_polygon(rng);
    EXPECT_NEAR(polar_projection_volume(surface_measure(p), circle_grid()).value, polar_projection_volume(p).value,
                1e-12);
    const auto e = random_box_union(rng, 3);
    EXPECT_NEAR(polar_projection_volume(surface_measure(e), sphere_grid()).value, polar_projection_volume(e).value,
                1e-12);
  }
}

TEST(PolarProjectionVolume, ThreeDimensionalQuadratureOnABoxMeasure) {
  // A rotated cube leaves the axis-class shortcut, so the radial quadrature runs.
  const double c = std::cos(0.3), s = std::sin(0.3);
  SurfaceMeasure mu;
  mu.dim = 3;
  const std::array<VecN, 3> axes{VecN(c, s, 0.0), VecN(-s, c, 0.0), VecN(0.0, 0.0, 1.0)};
  for (const auto& a : axes) {
    mu.atoms.push_back({a, 1.0});
    mu.atoms.push_back({-a, 1.0});
  }
  const VolumeEstimate v = polar_projection_volume(mu, sphere_grid());
  EXPECT_NEAR(v.value, 4.0 / 3.0, 1e-4);
  EXPECT_LE(std::abs(v.value - 4.0 / 3.0), v.error) << "error estimate " << v.error;
}

TEST(PettyProduct, Examples) {
  const PettyReport sq = petty_product(unit_square());
  EXPECT_NEAR(sq.product, 2.0, 1e-12);
  EXPECT_NEAR(sq.bound, std::numbers::pi * std::numbers::pi / 4.0, 1e-15);
  EXPECT_NEAR(sq.slack, sq.bound - 2.0, 1e-12);
  const auto cube = BoxUnion::make(3, {Box{3, {0, 0, 0}, {1, 1, 1}}});
  EXPECT_NEAR(petty_product(cube).product, 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(petty_product(staircase()).product, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(petty_bound(3), std::pow(4.0 / 3.0, 3), 1e-15);
}

TEST(PettyProduct, BoxFormula) {
  // |Pi* E| = 2^n / (n! prod a_i) with a_i = A_i / 2.
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const auto e = random_box_union(rng, n);
    const auto a = axis_class_areas(e);
    double expect = n == 2 ? 4.0 / 2.0 : 8.0 / 6.0;
    for (double ai : a) expect /= 0.5 * ai;
    EXPECT_NEAR(polar_projection_volume(e).value, expect, 1e-12 * expect);
  }
}

TEST(PettyProduct, ScaleAndTranslationInvariance) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_star_polygon(rng);
    const double base = petty_product(p).product;
    const double k = rng.uniform(0.2, 5.0);
    EXPECT_NEAR(petty_product(p.transformed({k, 0.0, 0.0, k})).product, base, 1e-11 * base);
    EXPECT_NEAR(petty_product(p.translated({3.0, -7.0})).product, base, 1e-11 * base);
  }
}

TEST(PettyProduct, BoundHoldsOnRandomSets) {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    EXPECT_GE(petty_product(random_star_polygon(rng)).slack, -1e-9);
    EXPECT_GE(petty_product(random_box_union(rng, 2 + trial % 2)).slack, -1e-9);
  }
}

TEST(AffineImage, IdentityShearRotation) {
  Rng rng(26);
  const SphericalGrid g = circle_grid();
  const auto p = random_star_polygon(rng);
  EXPECT_EQ(affine_image_check(p, {1.0, 0.0, 0.0, 1.0}, g), 0.0);
  EXPECT_LE(affine_image_check(p, Mat2::shear_x(1.5), g), 1e-12);
  EXPECT_LE(affine_image_check(p, Mat2::rotation(std::numbers::pi / 6.0), g), 1e-12);
  for (int trial = 0; trial < 20; ++trial) EXPECT_LE(affine_image_check(p, random_sl2(rng), g), 1e-9);
}

TEST(AffineImage, RejectsNonUnimodularMatrix) {
  try {
    affine_image_check(unit_square(), {2.0, 0.0, 0.0, 1.0}, circle_grid());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_volume_preserving);
  }
}

TEST(AffineImage, ProductIsInvariant) {
  Rng rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_star_polygon(rng);
    const double before = petty_product(p).product;
    const double after = petty_product(p.transformed(random_sl2(rng))).product;
    EXPECT_NEAR(after, before, 1e-9 * before);
  }
}

TEST(PolarInclusion, DiskAndRotatedPolygons) {
  const SphericalGrid g = circle_grid();
  const auto disk = PolygonSet::make(oracle::regular_polygon(200, 1.0, 0.001));
  EXPECT_TRUE(polar_steiner_inclusion_check(disk, Direction::from_angle(1.234), g).holds);
  const auto tri = PolygonSet::make({{0, 0}, {2, 0}, {0, 2}}).rotated(0.3);
  EXPECT_TRUE(polar_steiner_inclusion_check(tri, Direction::axis(2, 1), g).holds);
  const auto diamond = PolygonSet::make({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}).rotated(std::numbers::pi / 4);
  const PolarInclusionReport r = polar_steiner_inclusion_check(diamond, Direction::axis(2, 1), g);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.worst_margin, 1.0, 1e-12);
}

TEST(PolarInclusion, VerticalBoundaryIsRejected) {
  try {
    polar_steiner_inclusion_check(unit_square(), Direction::axis(2, 1), circle_grid());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::vertical_boundary);
  }
}

TEST(PolarInclusion, RandomPolygons) {
  Rng rng(28);
  const SphericalGrid g = circle_grid();
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_star_polygon(rng);
    const Direction u = random_direction(rng, 2);
    EXPECT_TRUE(polar_steiner_inclusion_check(p, u, g).holds);
  }
}
