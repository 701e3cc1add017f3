#include "vidpipe/synth.hpp"

#include "vidpipe/errors.hpp"

namespace vidpipe {

namespace {

std::int64_t positive_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::vector<Frame> synth_static(const StaticParams& p) {
  if (p.width < 1 || p.height < 1 || p.frames < 1)
    throw InvalidRangeError("static: bad dimensions");
  std::vector<Frame> out(static_cast<size_t>(p.frames),
                         Frame(p.width, p.height, 1, p.luma));
  return out;
}

std::vector<Frame> synth_moving_square(const MovingSquareParams& p) {
  if (p.width < 1 || p.height < 1 || p.frames < 1 || p.square < 1)
    throw InvalidRangeError("moving_square: bad dimensions");
  if (p.square > p.width || p.square > p.height || p.x0 < 0 || p.y0 < 0 ||
      p.x0 + p.square > p.width || p.y0 + p.square > p.height)
    throw InvalidRangeError("moving_square: square out of canvas");
  std::vector<Frame> out;
  out.reserve(static_cast<size_t>(p.frames));
  for (std::int64_t k = 0; k < p.frames; ++k) {
    Frame f(p.width, p.height, 1, p.background);
    std::int64_t left = positive_mod(p.x0 + k * p.dx, p.width);
    std::int64_t top = positive_mod(p.y0 + k * p.dy, p.height);
    for (std::int64_t dy = 0; dy < p.square; ++dy) {
      std::int64_t y = (top + dy) % p.height;
      for (std::int64_t dx = 0; dx < p.square; ++dx) {
        std::int64_t x = (left + dx) % p.width;
        f.at(x, y) = p.foreground;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Frame> synth_scene_sequence(const SceneSequenceParams& p) {
  if (p.width < 1 || p.height < 1 || p.scenes.empty())
    throw InvalidRangeError("scene_sequence: bad parameters");
  std::vector<Frame> out;
  for (const ScenePart& scene : p.scenes) {
    if (scene.frames < 1)
      throw InvalidRangeError("scene_sequence: empty scene");
    for (std::int64_t k = 0; k < scene.frames; ++k)
      out.emplace_back(p.width, p.height, 1, scene.luma);
  }
  return out;
}

VideoAsset write_synth(const std::string& asset_id, const std::string& path,
                       const std::vector<Frame>& frames,
                       std::uint32_t fps_num, std::uint32_t fps_den) {
  if (frames.empty()) throw InvalidRangeError("write_synth: no frames");
  VideoHeader h;
  h.width = static_cast<std::uint32_t>(frames[0].width);
  h.height = static_cast<std::uint32_t>(frames[0].height);
  h.channels = static_cast<std::uint8_t>(frames[0].channels);
  h.fps_num = fps_num;
  h.fps_den = fps_den;
  h.frame_count = static_cast<std::uint32_t>(frames.size());
  write_video(path, h, frames);
  return asset_from_file(asset_id, path);
}

}  // namespace vidpipe
