#include "cubemc/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cubemc/errors.hpp"
#include "oracle/geometry_oracle.hpp"

namespace cubemc {
namespace {

const CubeLayout kLayout(64);

void ExpectNear(SpherePoint a, SpherePoint b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

void ExpectNear(CubePoint a, CubePoint b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

// Uniform point on a random face, at least `margin` away from the face border.
UnfoldPoint RandomOnFace(std::mt19937_64& rng, const CubeLayout& layout, double margin) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_real_distribution<double> u(margin, layout.face_size() - margin);
  const FaceRect rect = layout.face_rect(kAllFaces[static_cast<std::size_t>(pick(rng))]);
  return {rect.x0 + u(rng), rect.y0 + u(rng)};
}

TEST(CubeLayoutTest, RejectsNonSquareAndTinyFaces) {
  EXPECT_THROW(CubeLayout(64, 32), ConfigError);
  EXPECT_THROW(CubeLayout(4), ConfigError);
  EXPECT_NO_THROW(CubeLayout(8));
}

TEST(CubeLayoutTest, FaceRectsAreDisjointAndInsideCanvas) {
  for (FaceId a : kAllFaces) {
    const FaceRect ra = kLayout.face_rect(a);
    EXPECT_GE(ra.x0, 0);
    EXPECT_GE(ra.y0, 0);
    EXPECT_LE(ra.x0 + ra.width, kLayout.canvas_width());
    EXPECT_LE(ra.y0 + ra.height, kLayout.canvas_height());
    for (FaceId b : kAllFaces) {
      if (a == b) continue;
      const FaceRect rb = kLayout.face_rect(b);
      const bool overlap = ra.x0 < rb.x0 + rb.width && rb.x0 < ra.x0 + ra.width && ra.y0 < rb.y0 + rb.height &&
                           rb.y0 < ra.y0 + ra.height;
      EXPECT_FALSE(overlap) << face_name(a) << " overlaps " << face_name(b);
    }
  }
}

TEST(FaceOfTest, Examples) {
  EXPECT_EQ(face_of({32, 96}, kLayout), FaceId::kFront);
  EXPECT_EQ(face_of({200, 10}, kLayout), std::nullopt);
  EXPECT_EQ(face_of({63.999, 63.999}, kLayout), FaceId::kTop);
  EXPECT_EQ(face_of({64, 32}, kLayout), std::nullopt);
  EXPECT_EQ(face_of({-0.5, 96}, kLayout), std::nullopt);
  EXPECT_EQ(face_of({256, 96}, kLayout), std::nullopt);
  EXPECT_EQ(face_of({NAN, 96}, kLayout), std::nullopt);
  EXPECT_EQ(face_of({96, 96}, kLayout), FaceId::kRight);
  EXPECT_EQ(face_of({160, 96}, kLayout), FaceId::kRear);
  EXPECT_EQ(face_of({224, 96}, kLayout), FaceId::kLeft);
  EXPECT_EQ(face_of({32, 160}, kLayout), FaceId::kBottom);
}

TEST(UnfoldToCubeTest, Examples) {
  ExpectNear(unfold_to_cube({32, 96}, kLayout), {0, 32, 0}, 0);
  ExpectNear(unfold_to_cube({96, 96}, kLayout), {32, 0, 0}, 0);
  ExpectNear(unfold_to_cube({48, 80}, kLayout), {16, 32, 16}, 0);
  EXPECT_THROW(unfold_to_cube({200, 10}, kLayout), GeometryError);
}

TEST(UnfoldToCubeTest, MatchesAffineTableOracle) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    const UnfoldPoint p = RandomOnFace(rng, kLayout, 0.0);
    const oracle::Vec3 want = oracle::to_cube({p.x, p.y}, 64);
    ExpectNear(unfold_to_cube(p, kLayout), {want.x, want.y, want.z}, 1e-12);
  }
}

TEST(CubeToUnfoldTest, Examples) {
  FacePoint fp = cube_to_unfold({0, 32, 0}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kFront);
  EXPECT_DOUBLE_EQ(fp.point.x, 32);
  EXPECT_DOUBLE_EQ(fp.point.y, 96);

  fp = cube_to_unfold({0, -32, 0}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kRear);
  EXPECT_DOUBLE_EQ(fp.point.x, 160);
  EXPECT_DOUBLE_EQ(fp.point.y, 96);

  fp = cube_to_unfold({16, 32, 16}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kFront);
  EXPECT_DOUBLE_EQ(fp.point.x, 48);
  EXPECT_DOUBLE_EQ(fp.point.y, 80);
}

TEST(CubeToUnfoldTest, RejectsPointsOffTheSurface) {
  EXPECT_THROW(cube_to_unfold({0, 0, 0}, kLayout), GeometryError);
  EXPECT_THROW(cube_to_unfold({10, 20, -5}, kLayout), GeometryError);
  EXPECT_THROW(cube_to_unfold({40, 0, 0}, kLayout), GeometryError);
}

TEST(CubeToUnfoldTest, EdgeTiesFollowFacePriorityAmongContainingFaces) {
  // FRO maps (32,32,0) to x = 64, outside its rect; RIG holds it.
  FacePoint fp = cube_to_unfold({32, 32, 0}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kRight);
  EXPECT_DOUBLE_EQ(fp.point.x, 64);
  EXPECT_DOUBLE_EQ(fp.point.y, 96);
  EXPECT_EQ(cube_to_unfold({32, -32, 0}, kLayout).face, FaceId::kRear);
  EXPECT_EQ(cube_to_unfold({-32, 0, 32}, kLayout).face, FaceId::kTop);
  // No rect holds this corner; plain priority applies.
  EXPECT_EQ(cube_to_unfold({-32, -32, -32}, kLayout).face, FaceId::kBottom);
  EXPECT_EQ(cube_to_unfold({-32, -32, 0}, kLayout).face, FaceId::kLeft);
  // TOP/FRO edge: TOP gives y = 64, which belongs to FRO.
  fp = cube_to_unfold({0, 32, 32}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kFront);
}

TEST(CubeToSphereTest, Examples) {
  ExpectNear(cube_to_sphere({0, 32, 0}, kLayout), {0, 32, 0}, 1e-12);
  // Ratio-form oracle: r / |c| with |c| = sqrt(1536).
  const oracle::Vec3 want = oracle::to_sphere({16, 32, 16}, 64);
  ExpectNear(cube_to_sphere({16, 32, 16}, kLayout), {want.x, want.y, want.z}, 1e-12);
  ExpectNear(cube_to_sphere({16, 32, 16}, kLayout), {13.0639, 26.1279, 13.0639}, 1e-3);
  ExpectNear(cube_to_sphere({-32, 0, 0}, kLayout), {-32, 0, 0}, 1e-12);
  EXPECT_THROW(cube_to_sphere({0, 0, 0}, kLayout), GeometryError);
}

TEST(SphereToCubeTest, Examples) {
  ExpectNear(sphere_to_cube({0, 32, 0}, kLayout), {0, 32, 0}, 0);
  ExpectNear(sphere_to_cube({13.0639, 26.1279, 13.0639}, kLayout), {16, 32, 16}, 1e-3);
  ExpectNear(sphere_to_cube({5.8651, 15.3988, 0}, kLayout), {12.188, 32, 0}, 1e-3);
  EXPECT_THROW(sphere_to_cube({0, 0, 0}, kLayout), GeometryError);
}

TEST(CompositeTest, Examples) {
  ExpectNear(unfold_to_sphere({32, 96}, kLayout), {0, 32, 0}, 1e-12);
  const FacePoint fp = sphere_to_unfold({0, 32, 0}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kFront);
  EXPECT_DOUBLE_EQ(fp.point.x, 32);
  EXPECT_DOUBLE_EQ(fp.point.y, 96);
  ExpectNear(unfold_to_sphere({48, 80}, kLayout), {13.0639, 26.1279, 13.0639}, 1e-3);
}

TEST(CompositeTest, SphereToUnfoldMatchesRayIntersectionOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 10.0);
  for (int n = 0; n < 5000; ++n) {
    const SpherePoint s{g(rng), g(rng), g(rng)};
    const FacePoint got = sphere_to_unfold(s, kLayout);
    const oracle::Vec2 want = oracle::sphere_to_unfold({s.x, s.y, s.z}, 64);
    EXPECT_NEAR(got.point.x, want.x, 1e-9);
    EXPECT_NEAR(got.point.y, want.y, 1e-9);
  }
}

TEST(GeometryPropertyTest, RoundTripNormCollinearityAndSurface) {
  for (int face_size : {8, 64, 100}) {
    const CubeLayout layout(face_size);
    const double w = face_size;
    const double r = layout.radius();
    std::mt19937_64 rng(static_cast<std::uint64_t>(face_size));
    for (int n = 0; n < 20000; ++n) {
      const UnfoldPoint p = RandomOnFace(rng, layout, 1e-6);
      const FaceId face = *face_of(p, layout);

      const CubePoint c = unfold_to_cube(p, layout);
      const double dominant = std::max({std::abs(c.x), std::abs(c.y), std::abs(c.z)});
      ASSERT_EQ(dominant, r);

      const SpherePoint s = cube_to_sphere(c, layout);
      ASSERT_NEAR(s.norm(), r, 1e-9 * w);

      // Angle between the cube point and its sphere point, seen from the origin.
      const double cross = std::hypot(c.y * s.z - c.z * s.y, c.z * s.x - c.x * s.z, c.x * s.y - c.y * s.x);
      ASSERT_LT(std::atan2(cross, c.x * s.x + c.y * s.y + c.z * s.z), 1e-12);

      const FacePoint back = sphere_to_unfold(s, layout);
      ASSERT_EQ(back.face, face);
      ASSERT_LT(std::max(std::abs(back.point.x - p.x), std::abs(back.point.y - p.y)), 1e-9 * w);
    }
  }
}

TEST(GeometryPropertyTest, FaceCentersMapToAxes) {
  const SpherePoint want[] = {{0, 0, 32}, {0, 32, 0}, {0, 0, -32}, {32, 0, 0}, {0, -32, 0}, {-32, 0, 0}};
  for (std::size_t k = 0; k < kAllFaces.size(); ++k) {
    const SpherePoint s = unfold_to_sphere(kLayout.face_center(kAllFaces[k]), kLayout);
    EXPECT_EQ(s.x, want[k].x) << face_name(kAllFaces[k]);
    EXPECT_EQ(s.y, want[k].y) << face_name(kAllFaces[k]);
    EXPECT_EQ(s.z, want[k].z) << face_name(kAllFaces[k]);
  }
}

// Border pixels on an edge that two rects both hold may come back on the other face.
TEST(GeometryPropertyTest, IntegerPixelsRoundTripOrResolveToSharedEdge) {
  for (int w : {8, 64}) {
    const CubeLayout layout(w);
    int moved = 0;
    for (int y = 0; y < layout.canvas_height(); ++y) {
      for (int x = 0; x < layout.canvas_width(); ++x) {
        const UnfoldPoint p{static_cast<double>(x), static_cast<double>(y)};
        const auto face = face_of(p, layout);
        if (!face) continue;
        const FacePoint q = sphere_to_unfold(unfold_to_sphere(p, layout), layout);
        ASSERT_EQ(face_of(q.point, layout), q.face) << x << "," << y;
        if (q.face == *face) {
          ASSERT_NEAR(q.point.x, p.x, 1e-9) << x << "," << y;
          ASSERT_NEAR(q.point.y, p.y, 1e-9) << x << "," << y;
          continue;
        }
        ++moved;
        const FaceRect r = layout.face_rect(*face);
        ASSERT_TRUE(x == r.x0 || y == r.y0) << x << "," << y;
        const SpherePoint a = unfold_to_sphere(p, layout);
        const SpherePoint b = unfold_to_sphere(q.point, layout);
        ASSERT_LT((a - b).norm(), 1e-9 * w) << x << "," << y;
      }
    }
    EXPECT_GT(moved, 0);
  }
}

// A corner shared by TOP, FRO and RIG: only RIG's half-open rect holds it.
TEST(CubeToUnfoldTest, CornerResolvesToContainingFace) {
  const FacePoint fp = cube_to_unfold({32, 32, 32}, kLayout);
  EXPECT_EQ(fp.face, FaceId::kRight);
  EXPECT_DOUBLE_EQ(fp.point.x, 64);
  EXPECT_DOUBLE_EQ(fp.point.y, 64);
  // TOP wins the TOP/LEF edge since its own rect contains the point.
  EXPECT_EQ(cube_to_unfold({-32, 0, 32}, kLayout).face, FaceId::kTop);
}

}  // namespace
}  // namespace cubemc
