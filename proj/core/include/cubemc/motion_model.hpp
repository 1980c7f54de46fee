#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubemc/geometry.hpp"

namespace cubemc {

// Displacement in the unfold plane, quarter-pel units.
struct MotionVector {
  std::int32_t x_q2 = 0;
  std::int32_t y_q2 = 0;

  bool is_zero() const { return x_q2 == 0 && y_q2 == 0; }
  double dx() const { return x_q2 / 4.0; }
  double dy() const { return y_q2 / 4.0; }

  friend MotionVector operator+(MotionVector a, MotionVector b) { return {a.x_q2 + b.x_q2, a.y_q2 + b.y_q2}; }
  friend MotionVector operator-(MotionVector a, MotionVector b) { return {a.x_q2 - b.x_q2, a.y_q2 - b.y_q2}; }
  friend bool operator==(MotionVector, MotionVector) = default;
};

struct Block {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;

  // Continuous center; for even sizes this falls between the four central pixels.
  UnfoldPoint center() const { return {x0 + (width - 1) / 2.0, y0 + (height - 1) / 2.0}; }
  friend bool operator==(const Block&, const Block&) = default;
};

// Throws MotionError unless the block is non-empty and lies inside a single face.
FaceId block_face(const Block& block, const CubeLayout& layout);

// Per-pixel reference positions for one block, 1/64-pel units, row-major.
struct CorrespondenceField {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> x_q6;
  std::vector<std::int32_t> y_q6;
  // 0 where the sphere transport degenerated and the translational fallback was used.
  std::vector<std::uint8_t> valid;

  CorrespondenceField() = default;
  CorrespondenceField(int w, int h);

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }

  // Integer-pel translation of the block at (x0, y0).
  static CorrespondenceField translational(const Block& block, MotionVector mv);
};

// Half-away-from-zero quantization helpers.
std::int32_t to_q6(double pixels);
std::int32_t to_q2(double pixels);

inline UnfoldPoint displaced(UnfoldPoint p, MotionVector mv) { return {p.x + mv.dx(), p.y + mv.dy()}; }

// Sphere-uniform transport: u0 -> u1 is the known displacement; returns where
// u2 lands when every sphere point moves by the same vector s1 - s0.
// Returns nullopt when the transported sphere point collapses to the origin.
// Edge ties prefer the face of u1.
std::optional<UnfoldPoint> transport_point(UnfoldPoint u0, UnfoldPoint u1, UnfoldPoint u2,
                                           const CubeLayout& layout);

// Same as transport_point, with the sphere points of the anchor pair precomputed.
std::optional<UnfoldPoint> transport_sphere(SpherePoint s0, SpherePoint s1, SpherePoint s2,
                                            const CubeLayout& layout, std::optional<FaceId> prefer = std::nullopt);

// True when the block center displaced by `mv` stays on a face.
bool center_mv_valid(const Block& block, MotionVector mv, const CubeLayout& layout);

CorrespondenceField build_correspondence_field(const Block& block, MotionVector mv, const CubeLayout& layout);

// Sphere points of every pixel of a block; lets a search reuse them across candidate MVs.
class BlockSphereCache {
 public:
  BlockSphereCache(const Block& block, const CubeLayout& layout);

  const Block& block() const { return block_; }
  const CubeLayout& layout() const { return layout_; }
  SpherePoint center() const { return center_; }
  SpherePoint at(int i, int j) const { return points_[static_cast<std::size_t>(j) * block_.width + i]; }

  CorrespondenceField field(MotionVector mv) const;

 private:
  Block block_;
  CubeLayout layout_;
  SpherePoint center_;
  std::vector<SpherePoint> points_;
};

// Moves a neighbor's center MV to the current block's center and rounds it to
// the quarter-pel grid. Falls back to `nb_mv` if the transport degenerates.
MotionVector transport_mv_predictor(UnfoldPoint nb_center, MotionVector nb_mv, UnfoldPoint cur_center,
                                    const CubeLayout& layout);

}  // namespace cubemc
