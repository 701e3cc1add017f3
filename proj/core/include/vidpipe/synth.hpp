#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"
#include "vidpipe/rvid.hpp"

namespace vidpipe {

/// Deterministic test-fixture generators. Pure functions of their
/// parameters: two runs produce byte-identical frames and files.

struct StaticParams {
  std::int64_t width = 64;
  std::int64_t height = 64;
  std::int64_t frames = 30;
  std::uint8_t luma = 128;
};

struct MovingSquareParams {
  std::int64_t width = 64;
  std::int64_t height = 64;
  std::int64_t frames = 10;
  std::int64_t square = 16;   // side length
  std::int64_t x0 = 0;        // initial top-left
  std::int64_t y0 = 0;
  std::int64_t dx = 8;        // translation per frame, wraps modulo canvas
  std::int64_t dy = 0;
  std::uint8_t foreground = 255;
  std::uint8_t background = 0;
};

struct ScenePart {
  std::uint8_t luma = 0;
  std::int64_t frames = 0;
};

struct SceneSequenceParams {
  std::int64_t width = 64;
  std::int64_t height = 64;
  std::vector<ScenePart> scenes;
};

std::vector<Frame> synth_static(const StaticParams& p);

/// Filled square of `foreground` on `background`, translated (dx, dy) per
/// frame. The square must fit the canvas at frame 0; translation wraps
/// modulo the canvas so it never leaves it afterwards.
std::vector<Frame> synth_moving_square(const MovingSquareParams& p);

/// Constant-luma scenes concatenated back to back.
std::vector<Frame> synth_scene_sequence(const SceneSequenceParams& p);

/// Writes frames as an RVID file and returns the registered asset view.
VideoAsset write_synth(const std::string& asset_id, const std::string& path,
                       const std::vector<Frame>& frames,
                       std::uint32_t fps_num = 30, std::uint32_t fps_den = 1);

}  // namespace vidpipe
