#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cubemc/errors.hpp"
#include "cubemc/frame_io.hpp"

namespace cubemc {

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SpherePoint unit(SpherePoint s) { return (1.0 / s.norm()) * s; }

constexpr double kLumaMean = 125.5;
constexpr double kLumaAmplitude = 100.0;
constexpr double kChromaMean = 128.0;
constexpr double kChromaAmplitude = 48.0;

std::uint8_t quantize(double value, int lo, int hi) {
  return static_cast<std::uint8_t>(std::clamp(static_cast<int>(std::lround(value)), lo, hi));
}

}  // namespace

void SyntheticSpec::validate() const {
  if (face_size < CubeLayout::kMinFaceSize || face_size % 2 != 0) {
    throw ConfigError("synthetic face size must be even and at least 8");
  }
  if (frames < 0) throw ConfigError("synthetic frame count must be non-negative");
  if (lobes != 0 && lobes < 3) throw ConfigError("synthetic texture needs 0 or at least 3 lobes");
  const double speed = std::hypot(velocity[0], velocity[1], velocity[2]);
  if (!std::isfinite(speed) || speed >= face_size / 8.0) {
    throw ConfigError("synthetic velocity must be below face_size / 8 per frame");
  }
}

SphereTexture::SphereTexture(std::uint64_t seed, int lobes, double mean, double amplitude) : mean_(mean) {
  std::mt19937_64 rng(seed);
  double weight_sum = 0.0;
  for (int k = 0; k < lobes; ++k) {
    // Uniform direction on the unit sphere.
    const double z = 2.0 * unit_uniform(rng) - 1.0;
    const double azimuth = 2.0 * std::numbers::pi * unit_uniform(rng);
    const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
    Lobe lobe{{ring * std::cos(azimuth), ring * std::sin(azimuth), z},
              3.0 + 9.0 * unit_uniform(rng),
              2.0 * std::numbers::pi * unit_uniform(rng),
              0.5 + unit_uniform(rng)};
    weight_sum += lobe.amplitude;
    lobes_.push_back(lobe);
  }
  for (Lobe& lobe : lobes_) lobe.amplitude *= amplitude / weight_sum;
}

double SphereTexture::operator()(const SpherePoint& d) const {
  double value = mean_;
  for (const Lobe& lobe : lobes_) {
    const double proj = d.x * lobe.axis.x + d.y * lobe.axis.y + d.z * lobe.axis.z;
    value += lobe.amplitude * std::cos(lobe.frequency * proj + lobe.phase);
  }
  return value;
}

SpherePoint advance_on_sphere(SpherePoint s, const SyntheticSpec& spec) {
  const SpherePoint moved = s + SpherePoint{spec.velocity[0], spec.velocity[1], spec.velocity[2]};
  return (0.5 * spec.face_size) * unit(moved);
}

SpherePoint retreat_on_sphere(SpherePoint s, const SyntheticSpec& spec) {
  // Solve |lambda * n - v| = r for the positive root.
  const SpherePoint n = unit(s);
  const SpherePoint v{spec.velocity[0], spec.velocity[1], spec.velocity[2]};
  const double r = 0.5 * spec.face_size;
  const double nv = n.x * v.x + n.y * v.y + n.z * v.z;
  const double vv = v.x * v.x + v.y * v.y + v.z * v.z;
  const double lambda = nv + std::sqrt(nv * nv - vv + r * r);
  return lambda * n - v;
}

std::vector<Frame> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const CubeLayout layout = spec.layout();
  const SphereTexture luma(spec.seed, spec.lobes, kLumaMean, kLumaAmplitude);
  const SphereTexture cb(spec.seed ^ 0x9E3779B97F4A7C15ull, spec.lobes, kChromaMean, kChromaAmplitude);
  const SphereTexture cr(spec.seed ^ 0xC2B2AE3D27D4EB4Full, spec.lobes, kChromaMean, kChromaAmplitude);

  // Frame-0 direction of the content shown at sphere point s in frame t.
  auto source_direction = [&](SpherePoint s, int t) {
    for (int k = 0; k < t; ++k) s = retreat_on_sphere(s, spec);
    return unit(s);
  };

  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(spec.frames));
  for (int t = 0; t < spec.frames; ++t) {
    Frame& f = frames.emplace_back(layout.canvas_width(), layout.canvas_height(), t, kHoleValue);
    for (int y = 0; y < f.height(); ++y) {
      for (int x = 0; x < f.width(); ++x) {
        const UnfoldPoint p{static_cast<double>(x), static_cast<double>(y)};
        if (!face_of(p, layout)) continue;
        f.y.at(x, y) = quantize(luma(source_direction(unfold_to_sphere(p, layout), t)), 16, 235);
      }
    }
    // Chroma samples are co-sited with even luma positions.
    for (int y = 0; y < f.u.height(); ++y) {
      for (int x = 0; x < f.u.width(); ++x) {
        const UnfoldPoint p{2.0 * x, 2.0 * y};
        if (!face_of(p, layout)) continue;
        const SpherePoint d = source_direction(unfold_to_sphere(p, layout), t);
        f.u.at(x, y) = quantize(cb(d), 16, 240);
        f.v.at(x, y) = quantize(cr(d), 16, 240);
      }
    }
  }
  return frames;
}

UnfoldPoint ground_truth_match(UnfoldPoint p, int t_delta, const SyntheticSpec& spec) {
  if (t_delta == 0) return p;
  const CubeLayout layout = spec.layout();
  SpherePoint s = unfold_to_sphere(p, layout);
  for (int k = 0; k < t_delta; ++k) s = advance_on_sphere(s, spec);
  for (int k = 0; k > t_delta; --k) s = retreat_on_sphere(s, spec);
  return sphere_to_unfold(s, layout).point;
}

}  // namespace cubemc
