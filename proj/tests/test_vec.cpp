#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "petty.hpp"

using namespace petty;

TEST(Direction, NormalizesAndChecksUnitLength) {
  const Direction u = Direction::normalize(VecN(3.0, 4.0));
  EXPECT_NEAR(u[0], 0.6, 1e-15);
  EXPECT_NEAR(u[1], 0.8, 1e-15);
  EXPECT_THROW(Direction::normalize(VecN(0.0, 0.0)), Error);
  EXPECT_THROW(Direction::checked(VecN(1.0, 1e-5)), Error);
  EXPECT_NO_THROW(Direction::checked(VecN(1.0, 0.0, 0.0)));
}

TEST(RigidFrame, LastAxisIsTheGivenDirection) {
  Rng rng(11);
  for (int n : {2, 3})
    for (int trial = 0; trial < 50; ++trial) {
      const Direction u = random_direction(rng, n);
      const RigidFrame f = RigidFrame::with_last_axis(u);
      EXPECT_NEAR(f.det(), 1.0, 1e-12);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_NEAR(dot(f.axis(i), f.axis(j)), i == j ? 1.0 : 0.0, 1e-12);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(f.last_axis()[i], u[i], 1e-15);
      const VecN x = n == 2 ? VecN(0.3, -1.7) : VecN(0.3, -1.7, 2.2);
      const VecN back = f.to_world(f.to_frame(x));
      for (int i = 0; i < n; ++i) EXPECT_NEAR(back[i], x[i], 1e-14);
      EXPECT_NEAR(f.to_frame(u.vec())[n - 1], 1.0, 1e-15);
    }
}

TEST(RigidFrame, RejectsImproperColumns) {
  EXPECT_THROW(RigidFrame::from_columns({VecN(0.0, 1.0), VecN(1.0, 0.0), VecN(2)}, 2), Error);
  EXPECT_THROW(RigidFrame::from_columns({VecN(1.0, 0.0), VecN(1.0, 1.0), VecN(2)}, 2), Error);
  EXPECT_NO_THROW(RigidFrame::from_columns({VecN(0.0, 1.0), VecN(-1.0, 0.0), VecN(2)}, 2));
}

TEST(Mat2, InverseAndShears) {
  const Mat2 a = Mat2::shear_x(0.7) * Mat2::rotation(0.4) * Mat2::shear_y(-1.2);
  EXPECT_NEAR(a.det(), 1.0, 1e-14);
  const Mat2 i = a * a.inverse();
  EXPECT_NEAR(i.a, 1.0, 1e-14);
  EXPECT_NEAR(i.b, 0.0, 1e-14);
  EXPECT_NEAR(i.c, 0.0, 1e-14);
  EXPECT_NEAR(i.d, 1.0, 1e-14);
  EXPECT_THROW(Mat2({1.0, 2.0, 2.0, 4.0}).inverse(), Error);
}

TEST(UnitBall, Volumes) {
  EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
  EXPECT_DOUBLE_EQ(unit_ball_volume(2), std::numbers::pi);
  EXPECT_DOUBLE_EQ(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0);
}

TEST(Planar, HullDropsInteriorAndCollinearPoints) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}, {1, 2}, {0, 1}};
  const auto h = planar::convex_hull(pts);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_DOUBLE_EQ(planar::signed_area(h), 4.0);
  EXPECT_TRUE(planar::is_convex(h));
}

TEST(Planar, HullOfRandomCloudContainsEveryPoint) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 200; ++i) pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const auto h = planar::convex_hull(pts);
    EXPECT_TRUE(planar::is_convex(h));
    for (const auto& p : pts) EXPECT_LE(planar::distance_to_region(h, p), 0.0 + 1e-15);
  }
}

TEST(Planar, DistanceToRegion) {
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_DOUBLE_EQ(planar::distance_to_region(sq, {0.5, 0.5}), 0.0);
  EXPECT_DOUBLE_EQ(planar::distance_to_region(sq, {2.0, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(planar::distance_to_region(sq, {4.0, 5.0}), 5.0);
}

TEST(Hausdorff, ConcentricDisks) {
  const SphericalGrid g = circle_grid();
  EXPECT_NEAR(hausdorff_distance(ConvexBody::ball(2, 1.0), ConvexBody::ball(2, 2.0), g), 1.0, 1e-15);
}

TEST(Hausdorff, IdenticalSquares) {
  const auto sq = PolygonSet::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Estimate d = hausdorff_distance(sq, sq);
  EXPECT_LE(d.value, d.uncertainty);
  const SphericalGrid g = circle_grid();
  const auto k = ConvexBody::polygon(std::vector<Vec2>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  EXPECT_EQ(hausdorff_distance(k, k, g), 0.0);
}

TEST(Hausdorff, TranslatedSquare) {
  const auto a = PolygonSet::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto b = a.translated({1.0, 0.0});
  const Estimate d = hausdorff_distance(a, b);
  EXPECT_NEAR(d.value, 1.0, d.uncertainty + 1e-12);
  EXPECT_NEAR(hausdorff_distance(b, a).value, d.value, 1e-12);
}

TEST(Hausdorff, ConvexFormMatchesBoundaryFormOnPolygons) {
  Rng rng(17);
  const SphericalGrid g = circle_grid();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec2> pa, pb;
    for (int i = 0; i < 12; ++i) {
      pa.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      pb.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    pa.push_back({0.01, 0.01});
    pa.push_back({-0.01, 0.01});
    pa.push_back({0, -0.01});
    pb.insert(pb.end(), {{0.01, 0.01}, {-0.01, 0.01}, {0, -0.01}});
    const auto ka = ConvexBody::polygon(pa), kb = ConvexBody::polygon(pb);
    const auto ea = PolygonSet::make(polygon_vertices(ka)), eb = PolygonSet::make(polygon_vertices(kb));
    const Estimate d = hausdorff_distance(ea, eb);
    EXPECT_NEAR(hausdorff_distance(ka, kb, g), d.value, d.uncertainty + 1e-3);
  }
}

TEST(Hausdorff, RotationInvariance) {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_star_polygon(rng), b = random_star_polygon(rng);
    const double th = rng.uniform(0, 6.283);
    const Estimate d0 = hausdorff_distance(a, b);
    const Estimate d1 = hausdorff_distance(a.rotated(th), b.rotated(th));
    EXPECT_NEAR(d0.value, d1.value, d0.uncertainty + d1.uncertainty + 1e-9);
  }
  const SphericalGrid g = circle_grid();
  const auto k = ConvexBody::polygon(oracle::regular_polygon(7, 1.0, 0.1));
  const auto l = ConvexBody::ball(2, 0.8);
  const auto kr = ConvexBody::polygon(oracle::regular_polygon(7, 1.0, 0.1 + 2.0 * std::numbers::pi / 4096 * 37));
  EXPECT_NEAR(hausdorff_distance(k, l, g), hausdorff_distance(kr, l, g), 1e-9);
}

TEST(Circumradius, Examples) {
  EXPECT_EQ(circumradius(ConvexBody::ball(2, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(circumradius(PolygonSet::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), std::sqrt(2.0));
  const auto e = BoxUnion::make(2, {Box{2, {0, 0, 0}, {2, 1, 0}}});
  EXPECT_DOUBLE_EQ(circumradius(e), std::sqrt(5.0));
}

TEST(Circumradius, MonotoneUnderInclusion) {
  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_box_union(rng, 2 + trial % 2);
    const auto e = BoxUnion::make(f.dim(), {f.boxes().front()});
    ASSERT_TRUE(contains(f, e));
    EXPECT_LE(circumradius(e), circumradius(f));
  }
  const auto small = PolygonSet::make(oracle::regular_polygon(9, 0.5));
  const auto big = PolygonSet::make(oracle::regular_polygon(9, 1.0));
  EXPECT_LT(circumradius(small), circumradius(big));
}
