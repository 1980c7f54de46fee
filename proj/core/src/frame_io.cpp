#include "cubemc/frame_io.hpp"

#include <fstream>

#include "cubemc/errors.hpp"

namespace cubemc {

Frame::Frame(int width, int height, int poc_, std::uint8_t fill)
    : y(width, height, fill), u(width / 2, height / 2, fill), v(width / 2, height / 2, fill), poc(poc_) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw ConfigError("frame dimensions must be positive and even");
  }
}

void validate_cube_canvas(const Frame& frame, const CubeLayout& layout) {
  if (frame.width() != layout.canvas_width() || frame.height() != layout.canvas_height()) {
    throw ConfigError("frame is not a 4x3 cube map canvas for this face size");
  }
  if (frame.u.width() != frame.width() / 2 || frame.u.height() != frame.height() / 2 ||
      frame.v.width() != frame.u.width() || frame.v.height() != frame.u.height()) {
    throw ConfigError("chroma planes are not 4:2:0");
  }
}

CubeLayout layout_for_canvas(int width, int height) {
  if (width % 4 != 0 || height % 3 != 0 || width / 4 != height / 3) {
    throw ConfigError("canvas is not 4x3 square faces");
  }
  const CubeLayout layout(width / 4);
  if (layout.face_size() % 2 != 0) throw ConfigError("face size must be even");
  return layout;
}

std::vector<Frame> read_yuv420(const std::filesystem::path& path, int width, int height) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw ConfigError("frame dimensions must be positive and even");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  std::error_code ec;
  const auto file_size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string());
  const std::uintmax_t luma = static_cast<std::uintmax_t>(width) * height;
  const std::uintmax_t frame_bytes = luma * 3 / 2;
  if (file_size % frame_bytes != 0) {
    throw IoError("size mismatch: " + path.string() + " is not a whole number of frames");
  }

  std::vector<Frame> frames;
  const auto count = static_cast<int>(file_size / frame_bytes);
  frames.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    Frame& f = frames.emplace_back(width, height, t);
    for (Plane* plane : {&f.y, &f.u, &f.v}) {
      auto s = plane->samples();
      in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(s.size()));
      if (!in) throw IoError("short read from " + path.string());
    }
  }
  return frames;
}

void write_yuv420(const std::filesystem::path& path, const std::vector<Frame>& frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const Frame& f : frames) {
    for (const Plane* plane : {&f.y, &f.u, &f.v}) {
      const auto s = plane->samples();
      out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size()));
    }
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace cubemc
