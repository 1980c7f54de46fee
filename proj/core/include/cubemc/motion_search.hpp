#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cubemc/geometry.hpp"
#include "cubemc/interp.hpp"
#include "cubemc/motion_model.hpp"

namespace cubemc {

struct SearchConfig {
  int search_range = 64;     // pixels, per component
  int raster_step = 8;       // pixels
  int refine_window_q2 = 8;  // quarter-pel half-width of the final refinement window
  double lambda = 0.0;       // weight of the MV-difference bit proxy

  void validate() const;
};

enum class MotionModel : std::uint8_t { kTranslational, kAdvanced };

enum class PredMode : std::uint8_t { kTranslational, kAdvancedMerge, kAdvancedAmvp };

std::string_view mode_name(PredMode mode);
std::optional<PredMode> parse_mode(std::string_view name);
inline bool is_advanced(PredMode mode) { return mode != PredMode::kTranslational; }

// Throws MotionError if the blocks differ in size.
std::uint64_t sad(const SampleBlock& a, const SampleBlock& b);

// Exp-Golomb-like length of an MV difference: per component 1 + 2 * bitlength(|v|).
int mv_bits(MotionVector mvd);

// mv * d_target / d_neighbor per component, rounded half away from zero and
// clipped to the signed 16-bit range. Throws MotionError when d_neighbor == 0.
MotionVector scale_mv(MotionVector mv, int d_target, int d_neighbor);

struct SearchResult {
  MotionVector mv;
  double cost = 0.0;
  std::uint64_t sad = 0;
};

// Prediction cost of one block under a motion model, with the candidate MV
// valid only when it keeps the block center on a face.
class BlockCostEvaluator {
 public:
  BlockCostEvaluator(const Block& block, const Plane& cur, const Plane& ref, const CubeLayout& layout,
                     const FilterBank& bank, MotionModel model, double lambda, MotionVector mvp);

  bool valid(MotionVector mv) const;
  // Full model cost: warp through the model's field, SAD, plus lambda * bits.
  SearchResult evaluate(MotionVector mv) const;
  // Integer-pel translational surrogate used by the coarse search stages.
  SearchResult evaluate_integer(int dx, int dy) const;
  CorrespondenceField field(MotionVector mv) const;

  const Block& block() const { return block_; }

 private:
  double rate(MotionVector mv) const;

  Block block_;
  const Plane& ref_;
  CubeLayout layout_;
  const FilterBank& bank_;
  MotionModel model_;
  double lambda_;
  MotionVector mvp_;
  SampleBlock target_;
  std::optional<BlockSphereCache> sphere_;
};

// Staged fast search: predictors, expanding diamond, raster, diamond
// refinement (integer pel, translational SAD), then quarter-pel refinement
// under `model`. The first predictor (or zero) is the MV predictor for the
// bit proxy. Throws MotionError("no valid motion") if nothing is evaluable.
SearchResult tzs_search(const Block& block, const Plane& cur, const Plane& ref,
                        std::span<const MotionVector> predictors, const SearchConfig& cfg,
                        const CubeLayout& layout, const FilterBank& bank,
                        MotionModel model = MotionModel::kAdvanced);

struct BlockRecord {
  bool coded = false;
  PredMode mode = PredMode::kTranslational;
  MotionVector mv;
  int ref_poc = 0;
  double cost = 0.0;
  std::uint64_t sad = 0;
  // Best translational result; neighbors use it to seed their own translational search.
  MotionVector trans_mv;
  double trans_cost = 0.0;
  std::uint64_t trans_sad = 0;
  // Best advanced-model SAD (merge or AMVP), when the advanced model was evaluated.
  std::optional<std::uint64_t> adv_sad;
};

// Fixed tiling of every face into full blocks, visited in raster order.
class BlockGrid {
 public:
  BlockGrid(const CubeLayout& layout, int block_size, int cur_poc = 0);

  const CubeLayout& layout() const { return layout_; }
  int block_size() const { return block_size_; }
  int cur_poc() const { return cur_poc_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  std::optional<std::size_t> index_at(int x, int y) const;
  std::size_t index_of(const Block& block) const;

  BlockRecord& record(std::size_t index) { return records_[index]; }
  const BlockRecord& record(std::size_t index) const { return records_[index]; }
  // Coded block covering pixel (x, y), if any.
  const BlockRecord* coded_at(int x, int y) const;

 private:
  CubeLayout layout_;
  int block_size_;
  int cur_poc_;
  std::vector<Block> blocks_;
  std::vector<BlockRecord> records_;
  std::vector<std::int32_t> owner_;
};

struct Neighbor {
  Block block;
  const BlockRecord* record;
};

enum class NeighborPos : std::uint8_t { kLeft, kAbove, kAboveRight, kBelowLeft, kAboveLeft };
std::optional<Neighbor> neighbor(const BlockGrid& grid, const Block& block, NeighborPos pos);

// First advanced-coded neighbor (left, above, above-right, below-left,
// above-left) with a nonzero MV, transported to this block's center.
std::optional<MotionVector> merge_candidate(const BlockGrid& grid, const Block& block, const CubeLayout& layout);

// First coded neighbor (below-left, left, above-right, above, above-left),
// transported to this block's center and POC-scaled if its reference differs.
// Zero when no neighbor qualifies.
MotionVector amvp_predictor(const BlockGrid& grid, const Block& block, int target_ref_poc, const CubeLayout& layout);

struct ModeDecisionInput {
  const Plane& cur;
  const Plane& ref;
  int ref_poc;
  const SearchConfig& cfg;
  const FilterBank& bank;
  bool advanced_enabled = true;
};

// Chooses among translational, advanced merge and advanced AMVP by cost
// (ties resolve in that order) and stores the outcome in the grid.
BlockRecord mode_decide(const Block& block, BlockGrid& grid, const ModeDecisionInput& in);

}  // namespace cubemc
