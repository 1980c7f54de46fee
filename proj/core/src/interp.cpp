#include "cubemc/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cubemc/errors.hpp"

namespace cubemc {

namespace {

// Window exp(-(d / kWindowScale)^kWindowShape) over the distance between a tap
// and the interpolated position.
constexpr double kWindowScale = 6.1;
constexpr double kWindowShape = 1.5;

// Value at continuous position `t` of the DCT-II interpolant through `n`
// unit-spaced samples, expressed as weights on those samples.
std::vector<double> dct_weights(int n, double t) {
  std::vector<double> w(static_cast<std::size_t>(n));
  const double pi = std::numbers::pi;
  for (int k = 0; k < n; ++k) {
    double acc = 1.0;
    for (int m = 1; m < n; ++m) {
      acc += 2.0 * std::cos((2 * k + 1) * m * pi / (2.0 * n)) * std::cos((2.0 * t + 1.0) * m * pi / (2.0 * n));
    }
    w[static_cast<std::size_t>(k)] = acc / n;
  }
  return w;
}

// Phases below one half use a 7-tap support (offsets -3..3), the half phase
// uses the full 8-tap support (offsets -3..4).
FilterTaps dctif_phase(int phase) {
  const double frac = phase / static_cast<double>(kFilterPhases);
  const int taps = 2 * phase < kFilterPhases ? 7 : 8;
  const double t = 3.0 + frac;

  std::vector<double> w = dct_weights(taps, t);
  double sum = 0.0;
  for (int k = 0; k < taps; ++k) {
    const double d = std::abs(k - t);
    w[static_cast<std::size_t>(k)] *= std::exp(-std::pow(d / kWindowScale, kWindowShape));
    sum += w[static_cast<std::size_t>(k)];
  }

  FilterTaps out{};
  int total = 0;
  for (int k = 0; k < taps; ++k) {
    out[static_cast<std::size_t>(k)] =
        static_cast<std::int16_t>(std::lround(w[static_cast<std::size_t>(k)] / sum * (1 << kFilterPrecisionBits)));
    total += out[static_cast<std::size_t>(k)];
  }
  const auto largest =
      std::max_element(out.begin(), out.end(), [](std::int16_t a, std::int16_t b) { return std::abs(a) < std::abs(b); });
  *largest = static_cast<std::int16_t>(*largest + ((1 << kFilterPrecisionBits) - total));
  return out;
}

}  // namespace

Plane::Plane(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), samples_(static_cast<std::size_t>(width) * height, fill) {
  if (width < 0 || height < 0) throw ConfigError("negative plane size");
}

std::uint8_t Plane::clamped(int x, int y) const {
  return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

FilterBank generate_dctif_bank() {
  FilterBank bank;
  bank.phases[0] = {0, 0, 0, 64, 0, 0, 0, 0};
  for (int p = 1; p <= kFilterPhases / 2; ++p) {
    bank.phases[static_cast<std::size_t>(p)] = dctif_phase(p);
  }
  for (int p = kFilterPhases / 2 + 1; p < kFilterPhases; ++p) {
    FilterTaps mirrored = bank.phases[static_cast<std::size_t>(kFilterPhases - p)];
    std::reverse(mirrored.begin(), mirrored.end());
    bank.phases[static_cast<std::size_t>(p)] = mirrored;
  }
  return bank;
}

const FilterBank& dctif_bank() {
  static const FilterBank bank = generate_dctif_bank();
  return bank;
}

std::uint8_t sample_fractional(const Plane& plane, std::int64_t x_q6, std::int64_t y_q6, const FilterBank& bank) {
  const int xi = static_cast<int>(x_q6 >> kFilterPrecisionBits);
  const int yi = static_cast<int>(y_q6 >> kFilterPrecisionBits);
  const FilterTaps& hx = bank[static_cast<int>(x_q6 & (kFilterPhases - 1))];
  const FilterTaps& vy = bank[static_cast<int>(y_q6 & (kFilterPhases - 1))];

  const int w = plane.width();
  const int h = plane.height();
  std::array<int, kFilterTaps> cols{};
  for (int k = 0; k < kFilterTaps; ++k) cols[static_cast<std::size_t>(k)] = std::clamp(xi - 3 + k, 0, w - 1);

  const auto samples = plane.samples();
  int acc = 0;
  for (int j = 0; j < kFilterTaps; ++j) {
    const int coeff_y = vy[static_cast<std::size_t>(j)];
    if (coeff_y == 0) continue;
    const std::size_t row = static_cast<std::size_t>(std::clamp(yi - 3 + j, 0, h - 1)) * w;
    int sum = 0;
    for (int k = 0; k < kFilterTaps; ++k) {
      sum += hx[static_cast<std::size_t>(k)] * samples[row + cols[static_cast<std::size_t>(k)]];
    }
    acc += coeff_y * ((sum + 32) >> 6);
  }
  return static_cast<std::uint8_t>(std::clamp((acc + 32) >> 6, 0, 255));
}

SampleBlock warp_block(const Plane& plane, const CorrespondenceField& field, const FilterBank& bank) {
  if (field.width <= 0 || field.height <= 0) throw ConfigError("empty correspondence field");
  SampleBlock out(field.width, field.height);
  for (std::size_t k = 0; k < out.samples.size(); ++k) {
    out.samples[k] = sample_fractional(plane, field.x_q6[k], field.y_q6[k], bank);
  }
  return out;
}

SampleBlock copy_block(const Plane& plane, const Block& block) {
  SampleBlock out(block.width, block.height);
  for (int j = 0; j < block.height; ++j) {
    for (int i = 0; i < block.width; ++i) {
      out.samples[static_cast<std::size_t>(j) * block.width + i] = plane.clamped(block.x0 + i, block.y0 + j);
    }
  }
  return out;
}

CorrespondenceField chroma_field(const CorrespondenceField& luma) {
  CorrespondenceField out(luma.width / 2, luma.height / 2);
  for (int j = 0; j < out.height; ++j) {
    for (int i = 0; i < out.width; ++i) {
      const std::size_t src = luma.index(2 * i, 2 * j);
      const std::size_t dst = out.index(i, j);
      out.x_q6[dst] = static_cast<std::int32_t>(std::lround(luma.x_q6[src] / 2.0));
      out.y_q6[dst] = static_cast<std::int32_t>(std::lround(luma.y_q6[src] / 2.0));
      out.valid[dst] = luma.valid[src];
    }
  }
  return out;
}

}  // namespace cubemc
