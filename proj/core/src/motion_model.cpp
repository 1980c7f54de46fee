#include "cubemc/motion_model.hpp"

#include <cmath>

#include "cubemc/errors.hpp"

namespace cubemc {

namespace {

constexpr double kDegenerateRadius = 1e-6;

}  // namespace

FaceId block_face(const Block& block, const CubeLayout& layout) {
  if (block.width <= 0 || block.height <= 0) throw MotionError("empty block");
  const auto face = face_of({static_cast<double>(block.x0), static_cast<double>(block.y0)}, layout);
  if (!face) throw MotionError("block is not on a face");
  const FaceRect rect = layout.face_rect(*face);
  if (block.x0 + block.width > rect.x0 + rect.width || block.y0 + block.height > rect.y0 + rect.height) {
    throw MotionError("block straddles a face boundary");
  }
  return *face;
}

CorrespondenceField::CorrespondenceField(int w, int h)
    : width(w),
      height(h),
      x_q6(static_cast<std::size_t>(w) * h),
      y_q6(static_cast<std::size_t>(w) * h),
      valid(static_cast<std::size_t>(w) * h, 1) {}

CorrespondenceField CorrespondenceField::translational(const Block& block, MotionVector mv) {
  CorrespondenceField field(block.width, block.height);
  for (int j = 0; j < block.height; ++j) {
    for (int i = 0; i < block.width; ++i) {
      const std::size_t k = field.index(i, j);
      field.x_q6[k] = (block.x0 + i) * 64 + mv.x_q2 * 16;
      field.y_q6[k] = (block.y0 + j) * 64 + mv.y_q2 * 16;
    }
  }
  return field;
}

std::int32_t to_q6(double pixels) { return static_cast<std::int32_t>(std::llround(pixels * 64.0)); }
std::int32_t to_q2(double pixels) { return static_cast<std::int32_t>(std::llround(pixels * 4.0)); }

std::optional<UnfoldPoint> transport_sphere(SpherePoint s0, SpherePoint s1, SpherePoint s2,
                                            const CubeLayout& layout, std::optional<FaceId> prefer) {
  const SpherePoint s3 = s1 - s0 + s2;
  if (!(s3.norm() >= kDegenerateRadius * layout.face_size())) return std::nullopt;
  return sphere_to_unfold(s3, layout, prefer).point;
}

std::optional<UnfoldPoint> transport_point(UnfoldPoint u0, UnfoldPoint u1, UnfoldPoint u2,
                                           const CubeLayout& layout) {
  return transport_sphere(unfold_to_sphere(u0, layout), unfold_to_sphere(u1, layout),
                          unfold_to_sphere(u2, layout), layout, face_of(u1, layout));
}

bool center_mv_valid(const Block& block, MotionVector mv, const CubeLayout& layout) {
  return face_of(displaced(block.center(), mv), layout).has_value();
}

BlockSphereCache::BlockSphereCache(const Block& block, const CubeLayout& layout)
    : block_(block), layout_(layout) {
  block_face(block, layout);
  center_ = unfold_to_sphere(block.center(), layout);
  points_.reserve(static_cast<std::size_t>(block.width) * block.height);
  for (int j = 0; j < block.height; ++j) {
    for (int i = 0; i < block.width; ++i) {
      points_.push_back(unfold_to_sphere({static_cast<double>(block.x0 + i), static_cast<double>(block.y0 + j)},
                                         layout));
    }
  }
}

CorrespondenceField BlockSphereCache::field(MotionVector mv) const {
  const UnfoldPoint target = displaced(block_.center(), mv);
  if (!face_of(target, layout_)) throw MotionError("invalid center MV");
  if (mv.is_zero()) return CorrespondenceField::translational(block_, mv);

  const SpherePoint s1 = unfold_to_sphere(target, layout_);
  const auto target_face = face_of(target, layout_);
  CorrespondenceField field(block_.width, block_.height);
  for (int j = 0; j < block_.height; ++j) {
    for (int i = 0; i < block_.width; ++i) {
      const std::size_t k = field.index(i, j);
      const auto moved = transport_sphere(center_, s1, at(i, j), layout_, target_face);
      if (moved) {
        field.x_q6[k] = to_q6(moved->x);
        field.y_q6[k] = to_q6(moved->y);
      } else {
        field.x_q6[k] = (block_.x0 + i) * 64 + mv.x_q2 * 16;
        field.y_q6[k] = (block_.y0 + j) * 64 + mv.y_q2 * 16;
        field.valid[k] = 0;
      }
    }
  }
  return field;
}

CorrespondenceField build_correspondence_field(const Block& block, MotionVector mv, const CubeLayout& layout) {
  if (!center_mv_valid(block, mv, layout)) throw MotionError("invalid center MV");
  return BlockSphereCache(block, layout).field(mv);
}

MotionVector transport_mv_predictor(UnfoldPoint nb_center, MotionVector nb_mv, UnfoldPoint cur_center,
                                    const CubeLayout& layout) {
  const UnfoldPoint nb_target = displaced(nb_center, nb_mv);
  if (!face_of(nb_target, layout)) throw MotionError("neighbor MV leaves the faces");
  if (nb_mv.is_zero()) return nb_mv;
  const auto moved = transport_point(nb_center, nb_target, cur_center, layout);
  if (!moved) return nb_mv;
  return {to_q2(moved->x - cur_center.x), to_q2(moved->y - cur_center.y)};
}

}  // namespace cubemc
