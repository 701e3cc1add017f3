#include "vidpipe/scene.hpp"

#include <cstdlib>

#include "vidpipe/errors.hpp"

namespace vidpipe {

double content_diff(const Frame& a, const Frame& b) {
  if (a.width != b.width || a.height != b.height || a.channels != 1 ||
      b.channels != 1)
    throw DimensionError("content_diff expects equal-size grayscale frames");
  std::uint64_t total = 0;
  const std::int64_t n = a.pixel_count();
  for (std::int64_t i = 0; i < n; ++i) {
    total += static_cast<std::uint64_t>(
        std::abs(static_cast<int>(a.pixels[i]) - static_cast<int>(b.pixels[i])));
  }
  return static_cast<double>(total) / (255.0 * static_cast<double>(n));
}

CutList detect_cuts(const std::string& asset_id, std::int64_t frame_count,
                    const std::function<Frame(std::int64_t)>& frame_at,
                    double cut_threshold, std::int64_t min_clip_frames) {
  if (cut_threshold <= 0.0 || cut_threshold > 1.0)
    throw InvalidRangeError("cut_threshold must be in (0,1]");
  CutList cuts;
  cuts.asset_id = asset_id;
  if (frame_count < 2) return cuts;
  std::int64_t last_kept = 0;
  Frame prev = frame_at(0);
  for (std::int64_t k = 0; k + 1 < frame_count; ++k) {
    Frame next = frame_at(k + 1);
    if (content_diff(prev, next) > cut_threshold) {
      std::int64_t cut = k + 1;
      if (cut - last_kept >= min_clip_frames) {
        cuts.cut_points.push_back(cut);
        last_kept = cut;
      }
    }
    prev = std::move(next);
  }
  return cuts;
}

std::vector<Clip> split_into_clips(const VideoAsset& asset,
                                   const CutList& cuts,
                                   std::int64_t min_clip_frames) {
  std::int64_t prev = -1;
  for (std::int64_t c : cuts.cut_points) {
    if (c <= 0 || c >= asset.frame_count || c <= prev)
      throw InvalidRangeError("cut list invalid for asset " + asset.asset_id);
    prev = c;
  }
  std::vector<Clip> clips;
  std::int64_t start = 0;
  auto emit = [&](std::int64_t begin, std::int64_t end) {
    if (end - begin >= min_clip_frames)
      clips.push_back(new_clip(asset, begin, end, ClipOrigin::SceneCut));
  };
  for (std::int64_t c : cuts.cut_points) {
    emit(start, c);
    start = c;
  }
  emit(start, asset.frame_count);
  return clips;
}

}  // namespace vidpipe
