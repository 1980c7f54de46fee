#include "cubemc/interp.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cubemc/errors.hpp"

namespace cubemc {
namespace {

Plane RampPlane(int w, int h, int ax, int ay) {
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p.at(x, y) = static_cast<std::uint8_t>(ax * x + ay * y);
  }
  return p;
}

Plane RandomPlane(int w, int h, std::uint64_t seed) {
  Plane p(w, h);
  std::mt19937_64 rng(seed);
  for (auto& s : p.samples()) s = static_cast<std::uint8_t>(rng() & 0xFF);
  return p;
}

// Direct two-stage convolution with explicit edge clamping.
int ConvolveOracle(const Plane& p, std::int64_t xq, std::int64_t yq, const FilterBank& bank) {
  const auto floor_div = [](std::int64_t v) { return static_cast<int>(std::floor(v / 64.0)); };
  const int xi = floor_div(xq);
  const int yi = floor_div(yq);
  const auto& hx = bank[static_cast<int>(xq - 64LL * xi)];
  const auto& vy = bank[static_cast<int>(yq - 64LL * yi)];
  int acc = 0;
  for (int j = 0; j < 8; ++j) {
    int row = 0;
    for (int k = 0; k < 8; ++k) {
      const int x = std::min(std::max(xi - 3 + k, 0), p.width() - 1);
      const int y = std::min(std::max(yi - 3 + j, 0), p.height() - 1);
      row += hx[static_cast<std::size_t>(k)] * p.at(x, y);
    }
    acc += vy[static_cast<std::size_t>(j)] * ((row + 32) >> 6);
  }
  return std::clamp((acc + 32) >> 6, 0, 255);
}

TEST(DctifBankTest, MatchesPublishedQuarterPelFilters) {
  const FilterBank bank = generate_dctif_bank();
  EXPECT_EQ(bank[0], (FilterTaps{0, 0, 0, 64, 0, 0, 0, 0}));
  EXPECT_EQ(bank[16], (FilterTaps{-1, 4, -10, 58, 17, -5, 1, 0}));
  EXPECT_EQ(bank[32], (FilterTaps{-1, 4, -11, 40, 40, -11, 4, -1}));
  EXPECT_EQ(bank[48], (FilterTaps{0, 1, -5, 17, 58, -10, 4, -1}));
}

TEST(DctifBankTest, EveryPhaseSumsTo64AndMirrors) {
  const FilterBank bank = generate_dctif_bank();
  for (int p = 0; p < kFilterPhases; ++p) {
    EXPECT_EQ(std::accumulate(bank[p].begin(), bank[p].end(), 0), 64) << "phase " << p;
  }
  for (int p = 1; p < kFilterPhases; ++p) {
    FilterTaps rev = bank[kFilterPhases - p];
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(bank[p], rev) << "phase " << p;
  }
}

TEST(DctifBankTest, CachedBankEqualsGenerated) { EXPECT_EQ(dctif_bank().phases, generate_dctif_bank().phases); }

TEST(SampleFractionalTest, IntegerPositionsReturnStoredSamples) {
  const Plane p = RandomPlane(40, 30, 1);
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) ASSERT_EQ(sample_fractional(p, x * 64, y * 64, dctif_bank()), p.at(x, y));
  }
}

TEST(SampleFractionalTest, ConstantPlaneIsReproducedEverywhere) {
  const Plane p(24, 24, 128);
  for (int yq = -200; yq < 24 * 64 + 200; yq += 7) {
    for (int xq = -200; xq < 24 * 64 + 200; xq += 5) ASSERT_EQ(sample_fractional(p, xq, yq, dctif_bank()), 128);
  }
}

TEST(SampleFractionalTest, HalfPelOnRamp) {
  const Plane p = RampPlane(32, 8, 2, 0);
  EXPECT_EQ(ConvolveOracle(p, 672, 4 * 64, dctif_bank()), 21);
  EXPECT_EQ(sample_fractional(p, 672, 4 * 64, dctif_bank()), 21);
}

TEST(SampleFractionalTest, LinearRampsWithinOneLevel) {
  const Plane p = RampPlane(48, 40, 2, 1);
  double total = 0.0;
  int n = 0;
  for (int yq = 4 * 64; yq <= (p.height() - 5) * 64; yq += 3) {
    for (int xq = 4 * 64; xq <= (p.width() - 5) * 64; xq += 5) {
      const double exact = 2.0 * xq / 64.0 + yq / 64.0;
      const int got = sample_fractional(p, xq, yq, dctif_bank());
      ASSERT_LE(std::abs(got - std::lround(exact)), 1) << xq << "," << yq;
      total += std::abs(got - exact);
      ++n;
    }
  }
  EXPECT_LT(total / n, 0.4);
}

TEST(SampleFractionalTest, MatchesConvolutionOracleIncludingOutOfBounds) {
  const Plane p = RandomPlane(20, 17, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> xq(-10 * 64, 30 * 64);
  std::uniform_int_distribution<int> yq(-10 * 64, 27 * 64);
  for (int n = 0; n < 20000; ++n) {
    const int x = xq(rng);
    const int y = yq(rng);
    ASSERT_EQ(sample_fractional(p, x, y, dctif_bank()), ConvolveOracle(p, x, y, dctif_bank())) << x << "," << y;
  }
}

TEST(WarpBlockTest, IdentityFieldCopiesBlock) {
  const Plane p = RandomPlane(64, 48, 4);
  const Block b{10, 12, 16, 8};
  const auto field = CorrespondenceField::translational(b, {0, 0});
  EXPECT_EQ(warp_block(p, field, dctif_bank()), copy_block(p, b));
}

TEST(WarpBlockTest, IntegerShiftCopiesNeighbourColumns) {
  const Plane p = RandomPlane(64, 48, 5);
  const Block b{10, 12, 16, 8};
  auto field = CorrespondenceField::translational(b, {0, 0});
  for (auto& x : field.x_q6) x += 64;
  EXPECT_EQ(warp_block(p, field, dctif_bank()), copy_block(p, {11, 12, 16, 8}));

  // Translational integer MV with negative components, near the border.
  const auto shifted = CorrespondenceField::translational({2, 3, 8, 8}, {-12, -8});
  EXPECT_EQ(warp_block(p, shifted, dctif_bank()), copy_block(p, {-1, 1, 8, 8}));
}

TEST(WarpBlockTest, EmptyFieldThrows) {
  const Plane p(8, 8);
  EXPECT_THROW(warp_block(p, CorrespondenceField{}, dctif_bank()), ConfigError);
}

TEST(ChromaFieldTest, HalvesEvenLumaEntries) {
  const auto luma = CorrespondenceField::translational({16, 32, 8, 4}, {5, -3});
  const CorrespondenceField chroma = chroma_field(luma);
  ASSERT_EQ(chroma.width, 4);
  ASSERT_EQ(chroma.height, 2);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 4; ++i) {
      // (16 + 2i) * 64 + 80 halves exactly; (32 + 2j) * 64 - 48 too.
      EXPECT_EQ(chroma.x_q6[chroma.index(i, j)], (8 + i) * 64 + 40);
      EXPECT_EQ(chroma.y_q6[chroma.index(i, j)], (16 + j) * 64 - 24);
    }
  }
  CorrespondenceField odd(2, 2);
  odd.x_q6 = {3, -3, 1, -1};
  odd.y_q6 = {0, 0, 0, 0};
  EXPECT_EQ(chroma_field(odd).x_q6[0], 2);
}

}  // namespace
}  // namespace cubemc
