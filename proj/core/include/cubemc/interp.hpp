#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cubemc/motion_model.hpp"

namespace cubemc {

// 8-bit sample plane, row-major.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<std::uint8_t> samples() { return samples_; }
  std::span<const std::uint8_t> samples() const { return samples_; }

  std::uint8_t at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  // Edge-clamped read.
  std::uint8_t clamped(int x, int y) const;

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

inline constexpr int kFilterPhases = 64;
inline constexpr int kFilterTaps = 8;
inline constexpr int kFilterPrecisionBits = 6;

using FilterTaps = std::array<std::int16_t, kFilterTaps>;

// Tap k of a phase applies to the integer sample at offset k - 3 from floor(position).
struct FilterBank {
  std::array<FilterTaps, kFilterPhases> phases{};

  const FilterTaps& operator[](int phase) const { return phases[static_cast<std::size_t>(phase)]; }
};

// DCT-based interpolation filters for phases k/64, k = 0..63.
FilterBank generate_dctif_bank();
// Process-wide copy of generate_dctif_bank().
const FilterBank& dctif_bank();

std::uint8_t sample_fractional(const Plane& plane, std::int64_t x_q6, std::int64_t y_q6, const FilterBank& bank);

struct SampleBlock {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;

  SampleBlock() = default;
  SampleBlock(int w, int h) : width(w), height(h), samples(static_cast<std::size_t>(w) * h) {}
  std::uint8_t at(int i, int j) const { return samples[static_cast<std::size_t>(j) * width + i]; }
  friend bool operator==(const SampleBlock&, const SampleBlock&) = default;
};

SampleBlock warp_block(const Plane& plane, const CorrespondenceField& field, const FilterBank& bank);

// Co-located copy of `block` from `plane` (edge-clamped).
SampleBlock copy_block(const Plane& plane, const Block& block);

// Field for the half-resolution chroma block of a luma block: the luma entry at
// (2i, 2j) with both coordinates halved and rounded to the nearest 1/64 pel.
CorrespondenceField chroma_field(const CorrespondenceField& luma);

}  // namespace cubemc
