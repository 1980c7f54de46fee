#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cubemc {

enum class FaceId : std::uint8_t { kTop = 0, kFront, kBottom, kRight, kRear, kLeft };

inline constexpr std::array<FaceId, 6> kAllFaces = {FaceId::kTop,   FaceId::kFront, FaceId::kBottom,
                                                    FaceId::kRight, FaceId::kRear,  FaceId::kLeft};

std::string_view face_name(FaceId face);

// Position on the unfolded canvas. Integer coordinates are pixel centers.
struct UnfoldPoint {
  double x = 0.0;
  double y = 0.0;
};

// Point in cube space; the cube is centered at the origin with half-edge faceWidth/2.
struct CubePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Point in sphere space. Points produced by projection lie on the sphere of
// radius faceWidth/2; arithmetic results (motion transport) may lie off it.
struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend SpherePoint operator+(SpherePoint a, SpherePoint b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend SpherePoint operator-(SpherePoint a, SpherePoint b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend SpherePoint operator*(double k, SpherePoint a) { return {k * a.x, k * a.y, k * a.z}; }
  double norm() const;
};

// Half-open pixel rectangle [x0, x0 + width) x [y0, y0 + height).
struct FaceRect {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;

  bool contains(double x, double y) const {
    return x >= x0 && x < x0 + width && y >= y0 && y < y0 + height;
  }
};

// 4x3 unfolded cube map:
//
//   TOP  .    .    .
//   FRO  RIG  REA  LEF
//   BOT  .    .    .
//
// Only square faces are supported.
class CubeLayout {
 public:
  static constexpr int kMinFaceSize = 8;

  CubeLayout(int face_width, int face_height);
  explicit CubeLayout(int face_size) : CubeLayout(face_size, face_size) {}

  int face_width() const { return face_size_; }
  int face_height() const { return face_size_; }
  int face_size() const { return face_size_; }
  int canvas_width() const { return 4 * face_size_; }
  int canvas_height() const { return 3 * face_size_; }
  double radius() const { return 0.5 * face_size_; }

  FaceRect face_rect(FaceId face) const;
  UnfoldPoint face_center(FaceId face) const;

  friend bool operator==(const CubeLayout&, const CubeLayout&) = default;

 private:
  int face_size_;
};

std::optional<FaceId> face_of(UnfoldPoint p, const CubeLayout& layout);

struct FacePoint {
  FaceId face;
  UnfoldPoint point;
};

CubePoint unfold_to_cube(UnfoldPoint p, const CubeLayout& layout);
// Edge ties resolve as in sphere_to_unfold.
FacePoint cube_to_unfold(CubePoint c, const CubeLayout& layout);

SpherePoint cube_to_sphere(CubePoint c, const CubeLayout& layout);
CubePoint sphere_to_cube(SpherePoint s, const CubeLayout& layout);

SpherePoint unfold_to_sphere(UnfoldPoint p, const CubeLayout& layout);
// Total on nonzero input: every ray from the origin hits exactly one face
// (edge and corner ties resolve in the order TOP, FRO, BOT, RIG, REA, LEF,
// skipping tied faces whose half-open rect does not contain the result).
// A tied `prefer` face that contains the result wins over the order.
FacePoint sphere_to_unfold(SpherePoint s, const CubeLayout& layout, std::optional<FaceId> prefer = std::nullopt);

}  // namespace cubemc
