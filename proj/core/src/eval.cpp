#include "cubemc/eval.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cubemc/errors.hpp"

namespace cubemc {

namespace {

double psnr_from_sse(std::uint64_t sse, std::uint64_t count) {
  if (count == 0 || sse == 0) return kPsnrCap;
  const double mse = static_cast<double>(sse) / static_cast<double>(count);
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

template <typename OnFace>
double plane_psnr(const Plane& a, const Plane& b, OnFace on_face) {
  std::uint64_t sse = 0;
  std::uint64_t count = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!on_face(x, y)) continue;
      const int d = int{a.at(x, y)} - int{b.at(x, y)};
      sse += static_cast<std::uint64_t>(d * d);
      ++count;
    }
  }
  return psnr_from_sse(sse, count);
}

void write_block(Plane& plane, int x0, int y0, const SampleBlock& block) {
  for (int j = 0; j < block.height; ++j) {
    for (int i = 0; i < block.width; ++i) plane.at(x0 + i, y0 + j) = block.at(i, j);
  }
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct PolicyRun {
  BlockGrid grid;
  Frame prediction;
  double total_cost = 0.0;
};

PolicyRun run_policy(const Frame& cur, const Frame& ref, const CubeLayout& layout, const EvalOptions& options,
                     bool advanced) {
  PolicyRun run{BlockGrid(layout, options.block_size, cur.poc), Frame{}, 0.0};
  const ModeDecisionInput in{cur.y, ref.y, ref.poc, options.search, dctif_bank(), advanced};
  for (const Block& block : run.grid.blocks()) {
    run.total_cost += mode_decide(block, run.grid, in).cost;
  }
  run.prediction = predict_frame(ref, run.grid, dctif_bank());
  return run;
}

}  // namespace

void EvalOptions::validate() const {
  if (block_size != 16 && block_size != 32 && block_size != 64) throw ConfigError("block size must be 16, 32 or 64");
  if (ref_distance < 1) throw ConfigError("reference distance must be at least 1");
  search.validate();
}

PlanePsnr frame_psnr(const Frame& ref, const Frame& test, const CubeLayout& layout) {
  validate_cube_canvas(ref, layout);
  validate_cube_canvas(test, layout);
  auto luma_on_face = [&](int x, int y) {
    return face_of({static_cast<double>(x), static_cast<double>(y)}, layout).has_value();
  };
  auto chroma_on_face = [&](int x, int y) { return luma_on_face(2 * x, 2 * y); };
  return {plane_psnr(ref.y, test.y, luma_on_face), plane_psnr(ref.u, test.u, chroma_on_face),
          plane_psnr(ref.v, test.v, chroma_on_face)};
}

Frame predict_frame(const Frame& ref, const BlockGrid& grid, const FilterBank& bank) {
  Frame out = ref;
  const CubeLayout& layout = grid.layout();
  for (std::size_t k = 0; k < grid.blocks().size(); ++k) {
    const Block& block = grid.blocks()[k];
    const BlockRecord& rec = grid.record(k);
    if (!rec.coded) continue;
    const CorrespondenceField field = is_advanced(rec.mode) ? build_correspondence_field(block, rec.mv, layout)
                                                            : CorrespondenceField::translational(block, rec.mv);
    write_block(out.y, block.x0, block.y0, warp_block(ref.y, field, bank));
    const CorrespondenceField cfield = chroma_field(field);
    write_block(out.u, block.x0 / 2, block.y0 / 2, warp_block(ref.u, cfield, bank));
    write_block(out.v, block.x0 / 2, block.y0 / 2, warp_block(ref.v, cfield, bank));
  }
  return out;
}

EvalReport run_eval(const std::vector<Frame>& frames, const CubeLayout& layout, const EvalOptions& options) {
  options.validate();
  for (const Frame& f : frames) validate_cube_canvas(f, layout);

  EvalReport report;
  std::size_t advanced_blocks = 0;
  for (std::size_t t = static_cast<std::size_t>(options.ref_distance); t < frames.size(); ++t) {
    const Frame& cur = frames[t];
    const Frame& ref = frames[t - static_cast<std::size_t>(options.ref_distance)];

    const PolicyRun trans_only = run_policy(cur, ref, layout, options, false);
    const PolicyRun advanced = run_policy(cur, ref, layout, options, true);

    FrameReport fr;
    fr.poc = cur.poc;
    fr.ref_poc = ref.poc;
    fr.trans_only = frame_psnr(cur, trans_only.prediction, layout);
    fr.advanced = frame_psnr(cur, advanced.prediction, layout);
    fr.trans_only_cost = trans_only.total_cost;
    fr.advanced_cost = advanced.total_cost;
    report.frames.push_back(fr);

    for (std::size_t k = 0; k < advanced.grid.blocks().size(); ++k) {
      const Block& b = advanced.grid.blocks()[k];
      const BlockRecord& rec = advanced.grid.record(k);
      report.blocks.push_back({cur.poc, b.x0, b.y0, rec.mode, rec.mv, rec.trans_sad, rec.adv_sad.value_or(rec.trans_sad)});
      if (is_advanced(rec.mode)) ++advanced_blocks;
    }
  }

  if (!report.frames.empty()) {
    for (const FrameReport& fr : report.frames) {
      report.mean_delta.y += fr.advanced.y - fr.trans_only.y;
      report.mean_delta.u += fr.advanced.u - fr.trans_only.u;
      report.mean_delta.v += fr.advanced.v - fr.trans_only.v;
    }
    const auto n = static_cast<double>(report.frames.size());
    report.mean_delta = {report.mean_delta.y / n, report.mean_delta.u / n, report.mean_delta.v / n};
  }
  if (!report.blocks.empty()) {
    report.advanced_fraction = static_cast<double>(advanced_blocks) / static_cast<double>(report.blocks.size());
  }
  return report;
}

void emit_csv(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << kCsvHeader << '\n';
  for (const BlockReport& b : report.blocks) {
    out << b.frame << ',' << b.x0 << ',' << b.y0 << ',' << mode_name(b.mode) << ',' << b.mv.x_q2 << ','
        << b.mv.y_q2 << ',' << b.sad_trans << ',' << b.sad_adv << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<BlockReport> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("unexpected CSV header in " + path.string());

  std::vector<BlockReport> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell[8];
    for (auto& c : cell) {
      if (!std::getline(fields, c, ',')) throw IoError("short CSV row: " + line);
    }
    const auto mode = parse_mode(cell[3]);
    if (!mode) throw IoError("unknown mode in CSV row: " + line);
    try {
      rows.push_back({std::stoi(cell[0]), std::stoi(cell[1]), std::stoi(cell[2]), *mode,
                      {std::stoi(cell[4]), std::stoi(cell[5])}, std::stoull(cell[6]), std::stoull(cell[7])});
    } catch (const std::logic_error&) {
      throw IoError("malformed CSV row: " + line);
    }
  }
  return rows;
}

void emit_summary(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  double trans_cost = 0.0;
  double adv_cost = 0.0;
  for (const FrameReport& fr : report.frames) {
    trans_cost += fr.trans_only_cost;
    adv_cost += fr.advanced_cost;
  }
  out << "predicted_frames=" << report.frames.size() << '\n'
      << "blocks=" << report.blocks.size() << '\n'
      << "mean_delta_psnr_y=" << format_fixed(report.mean_delta.y, 3) << '\n'
      << "mean_delta_psnr_u=" << format_fixed(report.mean_delta.u, 3) << '\n'
      << "mean_delta_psnr_v=" << format_fixed(report.mean_delta.v, 3) << '\n'
      << "advanced_fraction=" << format_fixed(report.advanced_fraction, 4) << '\n'
      << "total_cost_translational=" << format_fixed(trans_cost, 1) << '\n'
      << "total_cost_advanced=" << format_fixed(adv_cost, 1) << '\n';
  for (const FrameReport& fr : report.frames) {
    const std::string p = "frame" + std::to_string(fr.poc) + "_";
    out << p << "ref=" << fr.ref_poc << '\n'
        << p << "psnr_y_trans=" << format_fixed(fr.trans_only.y, 3) << '\n'
        << p << "psnr_y_adv=" << format_fixed(fr.advanced.y, 3) << '\n'
        << p << "psnr_u_trans=" << format_fixed(fr.trans_only.u, 3) << '\n'
        << p << "psnr_u_adv=" << format_fixed(fr.advanced.u, 3) << '\n'
        << p << "psnr_v_trans=" << format_fixed(fr.trans_only.v, 3) << '\n'
        << p << "psnr_v_adv=" << format_fixed(fr.advanced.v, 3) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace cubemc
