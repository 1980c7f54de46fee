#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "cubemc/geometry.hpp"
#include "cubemc/interp.hpp"

namespace cubemc {

inline constexpr std::uint8_t kHoleValue = 128;

// Planar 4:2:0 picture.
struct Frame {
  Plane y;
  Plane u;
  Plane v;
  int poc = 0;

  Frame() = default;
  Frame(int width, int height, int poc_ = 0, std::uint8_t fill = 0);

  int width() const { return y.width(); }
  int height() const { return y.height(); }
  friend bool operator==(const Frame&, const Frame&) = default;
};

// Throws ConfigError unless the frame is a 4x3 canvas of `layout`.
void validate_cube_canvas(const Frame& frame, const CubeLayout& layout);

// Layout implied by a 4x3 canvas of the given size.
CubeLayout layout_for_canvas(int width, int height);

// Raw headerless 8-bit YUV 4:2:0; the frame count follows from the file size.
std::vector<Frame> read_yuv420(const std::filesystem::path& path, int width, int height);
void write_yuv420(const std::filesystem::path& path, const std::vector<Frame>& frames);

struct SyntheticSpec {
  int face_size = 64;
  int frames = 8;
  // Sphere-space displacement per frame, in pixels (sphere radius is face_size / 2).
  std::array<double, 3> velocity{0.0, 0.0, 0.0};
  std::uint64_t seed = 1;
  // Number of texture lobes; 0 gives a flat picture.
  int lobes = 6;

  CubeLayout layout() const { return CubeLayout(face_size); }
  void validate() const;
};

// Smooth procedural pattern over directions: a sum of seeded plane waves.
class SphereTexture {
 public:
  SphereTexture(std::uint64_t seed, int lobes, double mean, double amplitude);

  double operator()(const SpherePoint& direction) const;

 private:
  struct Lobe {
    SpherePoint axis;
    double frequency;
    double phase;
    double amplitude;
  };
  double mean_;
  std::vector<Lobe> lobes_;
};

// One step of the synthetic motion: s -> radius * normalize(s + velocity).
SpherePoint advance_on_sphere(SpherePoint s, const SyntheticSpec& spec);
// Inverse of advance_on_sphere for points on the sphere.
SpherePoint retreat_on_sphere(SpherePoint s, const SyntheticSpec& spec);

// Frame t shows the frame-0 pattern moved t steps forward, so every
// consecutive pair is related exactly by advance_on_sphere.
std::vector<Frame> generate_synthetic(const SyntheticSpec& spec);

// Where the content at `p` in frame t sits in frame t + t_delta.
UnfoldPoint ground_truth_match(UnfoldPoint p, int t_delta, const SyntheticSpec& spec);

}  // namespace cubemc
