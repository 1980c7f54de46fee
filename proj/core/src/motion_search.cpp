#include "cubemc/motion_search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "cubemc/errors.hpp"

namespace cubemc {

namespace {

int l1(MotionVector mv) { return std::abs(mv.x_q2) + std::abs(mv.y_q2); }

// Deterministic ordering: cost, then |mv|, then dy, then dx.
bool better(const SearchResult& a, const SearchResult& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (l1(a.mv) != l1(b.mv)) return l1(a.mv) < l1(b.mv);
  if (a.mv.y_q2 != b.mv.y_q2) return a.mv.y_q2 < b.mv.y_q2;
  return a.mv.x_q2 < b.mv.x_q2;
}

std::int32_t round_div(std::int64_t num, std::int64_t den) {
  const bool negative = (num < 0) != (den < 0);
  const std::int64_t mag = (2 * std::llabs(num) + std::llabs(den)) / (2 * std::llabs(den));
  const std::int64_t v = negative ? -mag : mag;
  return static_cast<std::int32_t>(std::clamp<std::int64_t>(v, -32768, 32767));
}

int round_q2_to_pel(std::int32_t q2) {
  return q2 >= 0 ? (q2 + 2) / 4 : -((-q2 + 2) / 4);
}

// Integer-pel search state for the coarse stages.
class IntegerSearch {
 public:
  IntegerSearch(const BlockCostEvaluator& eval, int range) : eval_(eval), range_(range) {}

  bool visit(int dx, int dy, int distance) {
    if (std::abs(dx) > range_ || std::abs(dy) > range_) return false;
    const MotionVector mv{4 * dx, 4 * dy};
    if (!eval_.valid(mv)) return false;
    const SearchResult r = eval_.evaluate_integer(dx, dy);
    if (!has_best_ || better(r, best_)) {
      best_ = r;
      best_distance_ = distance;
      has_best_ = true;
    }
    return true;
  }

  // Points at distance 1, 2, 4, ... around (cx, cy).
  void expanding_diamond(int cx, int cy) {
    for (int d = 1; d <= range_; d *= 2) {
      if (d == 1) {
        visit(cx, cy - 1, 1);
        visit(cx - 1, cy, 1);
        visit(cx + 1, cy, 1);
        visit(cx, cy + 1, 1);
        continue;
      }
      const int h = d / 2;
      visit(cx, cy - d, d);
      visit(cx - h, cy - h, d);
      visit(cx + h, cy - h, d);
      visit(cx - d, cy, d);
      visit(cx + d, cy, d);
      visit(cx - h, cy + h, d);
      visit(cx + h, cy + h, d);
      visit(cx, cy + d, d);
    }
  }

  bool has_best() const { return has_best_; }
  const SearchResult& best() const { return best_; }
  int best_distance() const { return best_distance_; }
  void reset_distance() { best_distance_ = 0; }
  int best_dx() const { return best_.mv.x_q2 / 4; }
  int best_dy() const { return best_.mv.y_q2 / 4; }

 private:
  const BlockCostEvaluator& eval_;
  int range_;
  SearchResult best_;
  int best_distance_ = 0;
  bool has_best_ = false;
};

constexpr int kRasterTrigger = 5;

}  // namespace

void SearchConfig::validate() const {
  if (search_range <= 0 || raster_step <= 0 || refine_window_q2 <= 0) {
    throw ConfigError("search range, raster step and refinement window must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be a non-negative number");
}

std::string_view mode_name(PredMode mode) {
  switch (mode) {
    case PredMode::kTranslational: return "TRANS";
    case PredMode::kAdvancedMerge: return "ADV_MERGE";
    case PredMode::kAdvancedAmvp: return "ADV_AMVP";
  }
  return "?";
}

std::optional<PredMode> parse_mode(std::string_view name) {
  for (PredMode m : {PredMode::kTranslational, PredMode::kAdvancedMerge, PredMode::kAdvancedAmvp}) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

std::uint64_t sad(const SampleBlock& a, const SampleBlock& b) {
  if (a.width != b.width || a.height != b.height || a.samples.size() != b.samples.size()) {
    throw MotionError("SAD of blocks with different dimensions");
  }
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    total += static_cast<std::uint64_t>(std::abs(int{a.samples[k]} - int{b.samples[k]}));
  }
  return total;
}

int mv_bits(MotionVector mvd) {
  auto component = [](std::int32_t v) {
    const auto mag = static_cast<std::uint32_t>(std::abs(v));
    return 1 + 2 * static_cast<int>(std::bit_width(mag));
  };
  return component(mvd.x_q2) + component(mvd.y_q2);
}

MotionVector scale_mv(MotionVector mv, int d_target, int d_neighbor) {
  if (d_neighbor == 0) throw MotionError("MV scaling with zero neighbor POC distance");
  if (d_target == d_neighbor) return mv;
  return {round_div(std::int64_t{mv.x_q2} * d_target, d_neighbor),
          round_div(std::int64_t{mv.y_q2} * d_target, d_neighbor)};
}

BlockCostEvaluator::BlockCostEvaluator(const Block& block, const Plane& cur, const Plane& ref,
                                       const CubeLayout& layout, const FilterBank& bank, MotionModel model,
                                       double lambda, MotionVector mvp)
    : block_(block),
      ref_(ref),
      layout_(layout),
      bank_(bank),
      model_(model),
      lambda_(lambda),
      mvp_(mvp),
      target_(copy_block(cur, block)) {
  block_face(block, layout);
  if (model == MotionModel::kAdvanced) sphere_.emplace(block, layout);
}

bool BlockCostEvaluator::valid(MotionVector mv) const { return center_mv_valid(block_, mv, layout_); }

double BlockCostEvaluator::rate(MotionVector mv) const {
  return lambda_ == 0.0 ? 0.0 : lambda_ * mv_bits(mv - mvp_);
}

CorrespondenceField BlockCostEvaluator::field(MotionVector mv) const {
  if (model_ == MotionModel::kAdvanced) return sphere_->field(mv);
  if (!valid(mv)) throw MotionError("invalid center MV");
  return CorrespondenceField::translational(block_, mv);
}

SearchResult BlockCostEvaluator::evaluate(MotionVector mv) const {
  const std::uint64_t s = sad(target_, warp_block(ref_, field(mv), bank_));
  return {mv, static_cast<double>(s) + rate(mv), s};
}

SearchResult BlockCostEvaluator::evaluate_integer(int dx, int dy) const {
  std::uint64_t s = 0;
  for (int j = 0; j < block_.height; ++j) {
    for (int i = 0; i < block_.width; ++i) {
      const int pred = ref_.clamped(block_.x0 + i + dx, block_.y0 + j + dy);
      s += static_cast<std::uint64_t>(std::abs(int{target_.at(i, j)} - pred));
    }
  }
  const MotionVector mv{4 * dx, 4 * dy};
  return {mv, static_cast<double>(s) + rate(mv), s};
}

SearchResult tzs_search(const Block& block, const Plane& cur, const Plane& ref,
                        std::span<const MotionVector> predictors, const SearchConfig& cfg,
                        const CubeLayout& layout, const FilterBank& bank, MotionModel model) {
  cfg.validate();
  const MotionVector mvp = predictors.empty() ? MotionVector{} : predictors.front();
  const BlockCostEvaluator eval(block, cur, ref, layout, bank, model, cfg.lambda, mvp);
  const int range = cfg.search_range;
  IntegerSearch search(eval, range);

  // Stage 1: predictors and zero at integer pel.
  search.visit(0, 0, 0);
  for (MotionVector p : predictors) search.visit(round_q2_to_pel(p.x_q2), round_q2_to_pel(p.y_q2), 0);
  if (!search.has_best()) throw MotionError("no valid motion");

  // Stage 2: expanding diamond around the best start.
  const int start_x = search.best_dx();
  const int start_y = search.best_dy();
  search.reset_distance();
  search.expanding_diamond(start_x, start_y);

  if (search.best_distance() > 1) {
    // Stage 3: raster over the whole window when the diamond wandered far.
    if (search.best_distance() > kRasterTrigger) {
      for (int dy = -range; dy <= range; dy += cfg.raster_step) {
        for (int dx = -range; dx <= range; dx += cfg.raster_step) search.visit(dx, dy, cfg.raster_step);
      }
    }
    // Stage 4: diamond refinement around the running best until it settles.
    while (search.best_distance() > 1) {
      const int cx = search.best_dx();
      const int cy = search.best_dy();
      search.reset_distance();
      search.expanding_diamond(cx, cy);
    }
  }

  // Stage 5: quarter-pel refinement under the requested model.
  const MotionVector base = search.best().mv;
  const int limit = 4 * range;
  std::optional<SearchResult> best;
  std::vector<MotionVector> visited;
  auto consider = [&](MotionVector mv) {
    if (std::find(visited.begin(), visited.end(), mv) != visited.end()) return;
    visited.push_back(mv);
    if (std::abs(mv.x_q2) > limit || std::abs(mv.y_q2) > limit || !eval.valid(mv)) return;
    const SearchResult r = eval.evaluate(mv);
    if (!best || better(r, *best)) best = r;
  };
  const int w = cfg.refine_window_q2;
  consider(base);
  // Half-pel then quarter-pel descent over the 8-neighborhood, confined to the window.
  for (int step : {2, 1}) {
    for (;;) {
      const MotionVector center = best->mv;
      for (int dy = -step; dy <= step; dy += step) {
        for (int dx = -step; dx <= step; dx += step) {
          const MotionVector mv{center.x_q2 + dx, center.y_q2 + dy};
          if ((dx == 0 && dy == 0) || std::abs(mv.x_q2 - base.x_q2) > w || std::abs(mv.y_q2 - base.y_q2) > w) continue;
          consider(mv);
        }
      }
      if (best->mv == center) break;
    }
  }
  for (MotionVector p : predictors) consider(p);
  if (!best) throw MotionError("no valid motion");
  return *best;
}

BlockGrid::BlockGrid(const CubeLayout& layout, int block_size, int cur_poc)
    : layout_(layout), block_size_(block_size), cur_poc_(cur_poc) {
  if (block_size <= 0 || block_size % 2 != 0) throw ConfigError("block size must be positive and even");
  for (FaceId face : kAllFaces) {
    const FaceRect rect = layout.face_rect(face);
    for (int y = rect.y0; y + block_size <= rect.y0 + rect.height; y += block_size) {
      for (int x = rect.x0; x + block_size <= rect.x0 + rect.width; x += block_size) {
        blocks_.push_back({x, y, block_size, block_size});
      }
    }
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.y0 != b.y0 ? a.y0 < b.y0 : a.x0 < b.x0; });
  records_.resize(blocks_.size());
  owner_.assign(static_cast<std::size_t>(layout.canvas_width()) * layout.canvas_height(), -1);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& b = blocks_[k];
    for (int y = b.y0; y < b.y0 + b.height; ++y) {
      for (int x = b.x0; x < b.x0 + b.width; ++x) {
        owner_[static_cast<std::size_t>(y) * layout.canvas_width() + x] = static_cast<std::int32_t>(k);
      }
    }
  }
}

std::optional<std::size_t> BlockGrid::index_at(int x, int y) const {
  if (x < 0 || y < 0 || x >= layout_.canvas_width() || y >= layout_.canvas_height()) return std::nullopt;
  const std::int32_t k = owner_[static_cast<std::size_t>(y) * layout_.canvas_width() + x];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

std::size_t BlockGrid::index_of(const Block& block) const {
  const auto k = index_at(block.x0, block.y0);
  if (!k || !(blocks_[*k] == block)) throw MotionError("block is not part of the grid");
  return *k;
}

const BlockRecord* BlockGrid::coded_at(int x, int y) const {
  const auto k = index_at(x, y);
  if (!k || !records_[*k].coded) return nullptr;
  return &records_[*k];
}

std::optional<Neighbor> neighbor(const BlockGrid& grid, const Block& block, NeighborPos pos) {
  int x = 0;
  int y = 0;
  switch (pos) {
    case NeighborPos::kLeft: x = block.x0 - 1; y = block.y0 + block.height - 1; break;
    case NeighborPos::kAbove: x = block.x0 + block.width - 1; y = block.y0 - 1; break;
    case NeighborPos::kAboveRight: x = block.x0 + block.width; y = block.y0 - 1; break;
    case NeighborPos::kBelowLeft: x = block.x0 - 1; y = block.y0 + block.height; break;
    case NeighborPos::kAboveLeft: x = block.x0 - 1; y = block.y0 - 1; break;
  }
  const BlockRecord* rec = grid.coded_at(x, y);
  if (!rec) return std::nullopt;
  return Neighbor{grid.blocks()[*grid.index_at(x, y)], rec};
}

std::optional<MotionVector> merge_candidate(const BlockGrid& grid, const Block& block, const CubeLayout& layout) {
  constexpr NeighborPos kOrder[] = {NeighborPos::kLeft, NeighborPos::kAbove, NeighborPos::kAboveRight,
                                    NeighborPos::kBelowLeft, NeighborPos::kAboveLeft};
  for (NeighborPos pos : kOrder) {
    const auto nb = neighbor(grid, block, pos);
    if (!nb || !is_advanced(nb->record->mode) || nb->record->mv.is_zero()) continue;
    const MotionVector mv = transport_mv_predictor(nb->block.center(), nb->record->mv, block.center(), layout);
    if (mv.is_zero() || !center_mv_valid(block, mv, layout)) continue;
    return mv;
  }
  return std::nullopt;
}

MotionVector amvp_predictor(const BlockGrid& grid, const Block& block, int target_ref_poc, const CubeLayout& layout) {
  constexpr NeighborPos kOrder[] = {NeighborPos::kBelowLeft, NeighborPos::kLeft, NeighborPos::kAboveRight,
                                    NeighborPos::kAbove, NeighborPos::kAboveLeft};
  for (NeighborPos pos : kOrder) {
    const auto nb = neighbor(grid, block, pos);
    if (!nb) continue;
    MotionVector mv = transport_mv_predictor(nb->block.center(), nb->record->mv, block.center(), layout);
    if (nb->record->ref_poc != target_ref_poc) {
      mv = scale_mv(mv, grid.cur_poc() - target_ref_poc, grid.cur_poc() - nb->record->ref_poc);
    }
    if (!center_mv_valid(block, mv, layout)) continue;
    return mv;
  }
  return {};
}

BlockRecord mode_decide(const Block& block, BlockGrid& grid, const ModeDecisionInput& in) {
  const std::size_t index = grid.index_of(block);
  const CubeLayout& layout = grid.layout();

  // Translational predictors come only from neighbors' translational results,
  // so this search is identical whether or not the advanced model is enabled.
  std::vector<MotionVector> trans_preds;
  constexpr NeighborPos kOrder[] = {NeighborPos::kBelowLeft, NeighborPos::kLeft, NeighborPos::kAboveRight,
                                    NeighborPos::kAbove, NeighborPos::kAboveLeft};
  for (NeighborPos pos : kOrder) {
    const auto nb = neighbor(grid, block, pos);
    if (!nb) continue;
    if (std::find(trans_preds.begin(), trans_preds.end(), nb->record->trans_mv) == trans_preds.end()) {
      trans_preds.push_back(nb->record->trans_mv);
    }
  }
  const SearchResult trans =
      tzs_search(block, in.cur, in.ref, trans_preds, in.cfg, layout, in.bank, MotionModel::kTranslational);

  BlockRecord rec;
  rec.coded = true;
  rec.ref_poc = in.ref_poc;
  rec.mode = PredMode::kTranslational;
  rec.mv = trans.mv;
  rec.cost = trans.cost;
  rec.sad = trans.sad;
  rec.trans_mv = trans.mv;
  rec.trans_cost = trans.cost;
  rec.trans_sad = trans.sad;

  if (in.advanced_enabled) {
    std::optional<SearchResult> adv_best;
    if (const auto merge = merge_candidate(grid, block, layout)) {
      // Merge codes no MV difference.
      const BlockCostEvaluator eval(block, in.cur, in.ref, layout, in.bank, MotionModel::kAdvanced, 0.0, *merge);
      const SearchResult r = eval.evaluate(*merge);
      adv_best = r;
      if (r.cost < rec.cost) {
        rec.mode = PredMode::kAdvancedMerge;
        rec.mv = r.mv;
        rec.cost = r.cost;
        rec.sad = r.sad;
      }
    }
    const MotionVector mvp = amvp_predictor(grid, block, in.ref_poc, layout);
    const MotionVector seeds[] = {mvp, trans.mv};
    const SearchResult amvp = tzs_search(block, in.cur, in.ref, seeds, in.cfg, layout, in.bank, MotionModel::kAdvanced);
    if (!adv_best || amvp.cost < adv_best->cost) adv_best = amvp;
    if (amvp.cost < rec.cost) {
      rec.mode = PredMode::kAdvancedAmvp;
      rec.mv = amvp.mv;
      rec.cost = amvp.cost;
      rec.sad = amvp.sad;
    }
    rec.adv_sad = adv_best->sad;
  }

  grid.record(index) = rec;
  return rec;
}

}  // namespace cubemc
