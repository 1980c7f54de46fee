#include "cubemc/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cubemc/errors.hpp"

namespace cubemc {

namespace {

// Tolerance for "on the cube surface", relative to the face size.
constexpr double kSurfaceTolerance = 1e-9;

struct Placement {
  int col;
  int row;
};

constexpr Placement placement(FaceId face) {
  switch (face) {
    case FaceId::kTop: return {0, 0};
    case FaceId::kFront: return {0, 1};
    case FaceId::kBottom: return {0, 2};
    case FaceId::kRight: return {1, 1};
    case FaceId::kRear: return {2, 1};
    case FaceId::kLeft: return {3, 1};
  }
  return {0, 0};
}

// Inverse of unfold_to_cube for a point already known to lie on `face`.
UnfoldPoint cube_to_unfold_on(FaceId face, CubePoint c, double r) {
  switch (face) {
    case FaceId::kTop: return {c.x + r, c.y + r};
    case FaceId::kFront: return {c.x + r, 3.0 * r - c.z};
    case FaceId::kBottom: return {c.x + r, 5.0 * r - c.y};
    case FaceId::kRight: return {3.0 * r - c.y, 3.0 * r - c.z};
    case FaceId::kRear: return {5.0 * r - c.x, 3.0 * r - c.z};
    case FaceId::kLeft: return {c.y + 7.0 * r, 3.0 * r - c.z};
  }
  return {};
}

// Face hit by the ray through `v`, given which coordinates are treated as dominant.
// Faces whose axis coordinate is dominant, in tie-priority order.
template <typename IsDominant>
std::optional<FacePoint> pick_face(CubePoint c, double r, const CubeLayout& layout, IsDominant dominant,
                                   std::optional<FaceId> prefer = std::nullopt) {
  const std::array<std::pair<FaceId, bool>, 6> candidates = {{
      {FaceId::kTop, dominant(c.z) && c.z > 0},
      {FaceId::kFront, dominant(c.y) && c.y > 0},
      {FaceId::kBottom, dominant(c.z) && c.z < 0},
      {FaceId::kRight, dominant(c.x) && c.x > 0},
      {FaceId::kRear, dominant(c.y) && c.y < 0},
      {FaceId::kLeft, dominant(c.x) && c.x < 0},
  }};
  // On an edge or corner, take the first tied face whose half-open rect holds the result.
  std::optional<FacePoint> first;
  if (prefer && candidates[static_cast<std::size_t>(*prefer)].second) {
    const FacePoint fp{*prefer, cube_to_unfold_on(*prefer, c, r)};
    if (layout.face_rect(*prefer).contains(fp.point.x, fp.point.y)) return fp;
  }
  for (const auto& [face, ok] : candidates) {
    if (!ok) continue;
    const FacePoint fp{face, cube_to_unfold_on(face, c, r)};
    if (layout.face_rect(face).contains(fp.point.x, fp.point.y)) return fp;
    if (!first) first = fp;
  }
  return first;
}

}  // namespace

std::string_view face_name(FaceId face) {
  switch (face) {
    case FaceId::kTop: return "TOP";
    case FaceId::kFront: return "FRO";
    case FaceId::kBottom: return "BOT";
    case FaceId::kRight: return "RIG";
    case FaceId::kRear: return "REA";
    case FaceId::kLeft: return "LEF";
  }
  return "?";
}

double SpherePoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

CubeLayout::CubeLayout(int face_width, int face_height) : face_size_(face_width) {
  if (face_width != face_height) {
    throw ConfigError("cube faces must be square");
  }
  if (face_width < kMinFaceSize) {
    throw ConfigError("face size must be at least 8 pixels");
  }
}

FaceRect CubeLayout::face_rect(FaceId face) const {
  const Placement p = placement(face);
  return {p.col * face_size_, p.row * face_size_, face_size_, face_size_};
}

UnfoldPoint CubeLayout::face_center(FaceId face) const {
  const FaceRect rect = face_rect(face);
  return {rect.x0 + 0.5 * rect.width, rect.y0 + 0.5 * rect.height};
}

std::optional<FaceId> face_of(UnfoldPoint p, const CubeLayout& layout) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  for (FaceId face : kAllFaces) {
    if (layout.face_rect(face).contains(p.x, p.y)) return face;
  }
  return std::nullopt;
}

CubePoint unfold_to_cube(UnfoldPoint p, const CubeLayout& layout) {
  const auto face = face_of(p, layout);
  if (!face) throw GeometryError("not on a face");
  const double r = layout.radius();
  const double x = p.x;
  const double y = p.y;
  switch (*face) {
    case FaceId::kTop: return {x - r, y - r, r};
    case FaceId::kFront: return {x - r, r, 3.0 * r - y};
    case FaceId::kBottom: return {x - r, 5.0 * r - y, -r};
    case FaceId::kRight: return {r, 3.0 * r - x, 3.0 * r - y};
    case FaceId::kRear: return {5.0 * r - x, -r, 3.0 * r - y};
    case FaceId::kLeft: return {-r, x - 7.0 * r, 3.0 * r - y};
  }
  throw GeometryError("not on a face");
}

FacePoint cube_to_unfold(CubePoint c, const CubeLayout& layout) {
  const double r = layout.radius();
  const double tol = kSurfaceTolerance * layout.face_size();
  const double m = std::max({std::abs(c.x), std::abs(c.y), std::abs(c.z)});
  if (!std::isfinite(m) || std::abs(m - r) > tol) throw GeometryError("not on surface");
  const auto fp = pick_face(c, r, layout, [&](double v) { return std::abs(std::abs(v) - r) <= tol; });
  if (!fp) throw GeometryError("not on surface");
  return *fp;
}

SpherePoint cube_to_sphere(CubePoint c, const CubeLayout& layout) {
  const double len = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
  if (!(len > 0.0) || !std::isfinite(len)) throw GeometryError("degenerate direction");
  const double k = layout.radius() / len;
  return {k * c.x, k * c.y, k * c.z};
}

CubePoint sphere_to_cube(SpherePoint s, const CubeLayout& layout) {
  const double m = std::max({std::abs(s.x), std::abs(s.y), std::abs(s.z)});
  if (!(m > 0.0) || !std::isfinite(m)) throw GeometryError("degenerate direction");
  const double r = layout.radius();
  const double k = r / m;
  CubePoint c{k * s.x, k * s.y, k * s.z};
  // Pin the dominant coordinate so the result is exactly on the surface.
  if (std::abs(s.x) == m) c.x = std::copysign(r, s.x);
  if (std::abs(s.y) == m) c.y = std::copysign(r, s.y);
  if (std::abs(s.z) == m) c.z = std::copysign(r, s.z);
  return c;
}

SpherePoint unfold_to_sphere(UnfoldPoint p, const CubeLayout& layout) {
  return cube_to_sphere(unfold_to_cube(p, layout), layout);
}

FacePoint sphere_to_unfold(SpherePoint s, const CubeLayout& layout, std::optional<FaceId> prefer) {
  const CubePoint c = sphere_to_cube(s, layout);
  const double r = layout.radius();
  // sphere_to_cube always pins at least one coordinate to +-r.
  return *pick_face(c, r, layout, [&](double v) { return std::abs(v) == r; }, prefer);
}

}  // namespace cubemc
