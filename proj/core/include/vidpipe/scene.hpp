#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

/// Scene-cut positions for one asset. Each cut c starts a new clip at
/// frame c; cuts are strictly increasing and lie in (0, frame_count).
struct CutList {
  std::string asset_id;
  std::vector<std::int64_t> cut_points;
};

/// Mean absolute luma difference, normalized to [0,1].
double content_diff(const Frame& a, const Frame& b);

/// Emits a cut at frame k+1 whenever content_diff(frame k, frame k+1)
/// exceeds cut_threshold. Cuts closer than min_clip_frames to the
/// previously kept cut (or to frame 0) are suppressed, keeping the
/// earlier cut. `frame_at` is called with indices 0..frame_count-1 and
/// must yield grayscale frames.
CutList detect_cuts(const std::string& asset_id, std::int64_t frame_count,
                    const std::function<Frame(std::int64_t)>& frame_at,
                    double cut_threshold, std::int64_t min_clip_frames);

/// Contiguous, non-overlapping clips between consecutive cut points,
/// covering [0, frame_count). Residual segments shorter than
/// min_clip_frames are dropped, not merged.
std::vector<Clip> split_into_clips(const VideoAsset& asset,
                                   const CutList& cuts,
                                   std::int64_t min_clip_frames);

}  // namespace vidpipe
