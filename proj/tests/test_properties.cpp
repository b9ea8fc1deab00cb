#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "petty.hpp"

using namespace petty;

TEST(Properties, IteratedSymmetrizationPreservesVolumeAndShrinksPerimeter) {
  Rng rng(100);
  for (int trial = 0; trial < 60; ++trial) {
    PolygonSet e = random_star_polygon(rng);
    const double v0 = volume(e);
    for (int step = 0; step < 6; ++step) {
      const auto s = oracle::symmetrize(e, random_direction(rng, 2));
      EXPECT_NEAR(volume(s), v0, 1e-12 * v0);
      e = s;
    }
  }
}

TEST(Properties, ProductIsMonotoneUnderSymmetrization) {
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = random_star_polygon(rng);
    const auto s = oracle::symmetrize(e, random_direction(rng, 2));
    EXPECT_GE(petty_product(s).product, petty_product(e).product * (1.0 - 1e-9));
  }
}

TEST(Properties, BoxProductIsMonotoneUnderAxisSymmetrization) {
  Rng rng(102);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 2;
    const auto e = random_box_union(rng, n);
    const auto s = oracle::symmetrize(e, Direction::axis(n, rng.uniform_int(0, n - 1)));
    EXPECT_GE(petty_product(s).product, petty_product(e).product - 1e-12);
    EXPECT_LE(petty_product(s).product, petty_bound(n) + 1e-9);
  }
}

TEST(Properties, OppositeDirectionsGiveTheSameSymmetral) {
  Rng rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = random_star_polygon(rng);
    const Direction u = random_direction(rng, 2);
    const Direction v = Direction::normalize(-u.vec());
    EXPECT_LE(symmetric_difference_distance(steiner_symmetrize(e, u), steiner_symmetrize(e, v)).value, 1e-9);
  }
}

TEST(Properties, SymmetrizationIsRotationEquivariant) {
  Rng rng(104);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = random_star_polygon(rng);
    const Direction u = random_direction(rng, 2);
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Mat2 r = Mat2::rotation(th);
    const auto a = steiner_symmetrize(e.rotated(th), Direction::normalize(VecN(r * u.xy())));
    const auto b = steiner_symmetrize(e, u).rotated(th);
    EXPECT_NEAR(volume(a), volume(b), 1e-12);
    EXPECT_LE(symmetric_difference_distance(a, b).value, 1e-9);
  }
}

TEST(Properties, ProjectionSupportIsEvenHomogeneousAndSubadditive) {
  Rng rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pi = projection_body(random_star_polygon(rng));
    for (int k = 0; k < 10; ++k) {
      const VecN x = random_direction(rng, 2).vec() * rng.uniform(0.1, 2.0);
      const VecN y = random_direction(rng, 2).vec() * rng.uniform(0.1, 2.0);
      const double t = rng.uniform(0.1, 5.0);
      EXPECT_NEAR(support(pi, x), support(pi, -x), 1e-12);
      EXPECT_NEAR(support(pi, x * t), t * support(pi, x), 1e-12 * t);
      EXPECT_LE(support(pi, x + y), support(pi, x) + support(pi, y) + 1e-12);
    }
  }
}

TEST(Properties, BoundHoldsWithSlackOnRandomSets) {
  Rng rng(106);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_star_polygon(rng);
    EXPECT_LE(petty_product(p).product, petty_bound(2) + 1e-9);
    const auto e = random_box_union(rng, 2 + trial % 2);
    EXPECT_LE(petty_product(e).product, petty_bound(e.dim()) + 1e-9);
  }
}

TEST(Properties, SurfaceMeasureOfSymmetralIsClosed) {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = steiner_symmetrize(random_star_polygon(rng), random_direction(rng, 2));
    const VecN m = surface_measure(s).moment();
    EXPECT_NEAR(m[0], 0.0, 1e-9);
    EXPECT_NEAR(m[1], 0.0, 1e-9);
  }
}

TEST(Properties, SymmetralIsInsideTheCenteredCircumball) {
  Rng rng(108);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e0 = random_star_polygon(rng);
    const auto e = e0.translated(-e0.centroid());
    const auto s = steiner_symmetrize(e, random_direction(rng, 2));
    EXPECT_LE(circumradius(s), circumradius(e) + 1e-12);
  }
}

TEST(Properties, AffineImageIdentityOnRandomPolygons) {
  Rng rng(109);
  const SphericalGrid g = circle_grid();
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_star_polygon(rng);
    for (int k = 0; k < 5; ++k) EXPECT_LE(affine_image_check(p, random_sl2(rng), g), 1e-9);
  }
}
