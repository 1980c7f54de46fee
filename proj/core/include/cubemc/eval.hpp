#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cubemc/frame_io.hpp"
#include "cubemc/motion_search.hpp"

namespace cubemc {

struct EvalOptions {
  int block_size = 16;
  // Reference is `ref_distance` frames back; larger values mimic random-access GOPs.
  int ref_distance = 1;
  SearchConfig search;

  void validate() const;
};

struct PlanePsnr {
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct FrameReport {
  int poc = 0;
  int ref_poc = 0;
  PlanePsnr trans_only;
  PlanePsnr advanced;
  double trans_only_cost = 0.0;
  double advanced_cost = 0.0;
};

// One row per block of every predicted frame, taken from the advanced-enabled run.
struct BlockReport {
  int frame = 0;
  int x0 = 0;
  int y0 = 0;
  PredMode mode = PredMode::kTranslational;
  MotionVector mv;
  std::uint64_t sad_trans = 0;
  std::uint64_t sad_adv = 0;

  friend bool operator==(const BlockReport&, const BlockReport&) = default;
};

struct EvalReport {
  std::vector<FrameReport> frames;
  std::vector<BlockReport> blocks;
  PlanePsnr mean_delta;          // advanced minus translational-only, dB
  double advanced_fraction = 0.0;
};

// Peak value used when a prediction is exact.
inline constexpr double kPsnrCap = 100.0;

// PSNR over face pixels only; chroma samples count when their co-sited luma pixel is on a face.
PlanePsnr frame_psnr(const Frame& ref, const Frame& test, const CubeLayout& layout);

// Motion-compensated prediction of the whole canvas from a coded grid. Pixels
// outside the grid (corner holes, partial blocks) copy the co-located reference.
Frame predict_frame(const Frame& ref, const BlockGrid& grid, const FilterBank& bank);

// Runs mode decision over every frame twice (advanced modes off, then on) and
// compares the resulting predictions.
EvalReport run_eval(const std::vector<Frame>& frames, const CubeLayout& layout, const EvalOptions& options);

inline constexpr const char* kCsvHeader = "frame,bx,by,mode,mv_x_q2,mv_y_q2,sad_trans,sad_adv";

void emit_csv(const EvalReport& report, const std::filesystem::path& path);
std::vector<BlockReport> read_csv(const std::filesystem::path& path);
// key=value aggregates.
void emit_summary(const EvalReport& report, const std::filesystem::path& path);

}  // namespace cubemc
