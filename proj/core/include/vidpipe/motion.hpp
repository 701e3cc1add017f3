#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

/// Row-major binary image; bits are 0 or 1.
struct BinaryMask {
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(std::int64_t w, std::int64_t h)
      : width(w), height(h), bits(static_cast<size_t>(w) * h, 0) {}

  std::uint8_t& at(std::int64_t x, std::int64_t y) {
    return bits[static_cast<size_t>(y * width + x)];
  }
  std::uint8_t at(std::int64_t x, std::int64_t y) const {
    return bits[static_cast<size_t>(y * width + x)];
  }

  bool operator==(const BinaryMask&) const = default;
};

/// Per-pair motion scores of a clip. scores[k] belongs to the frame pair
/// (k, k+1) in clip-local indexing; average is their arithmetic mean.
struct MotionProfile {
  std::string clip_id;
  std::vector<double> scores;
  double average = 0.0;
};

/// bit = 1 iff |a - b| > pix_diff_threshold (strict).
BinaryMask motion_mask(const Frame& a, const Frame& b, int pix_diff_threshold);

/// Morphological opening then closing with a 3x3 all-ones kernel and
/// edge-replicate padding, so uniform masks are fixed points.
BinaryMask refine_mask(const BinaryMask& mask);

/// Fraction of set bits.
double motion_score(const BinaryMask& mask);

/// scores[k] = motion_score(refine_mask(motion_mask(frame k, frame k+1))).
/// Requires at least 2 frames.
MotionProfile motion_profile(const std::string& clip_id,
                             std::span<const Frame> frames,
                             int pix_diff_threshold);

/// True iff the average motion score is strictly below the threshold.
bool is_static(const MotionProfile& profile, double static_threshold);

/// Index k of the peak score, when scores[k] > peak_threshold and it
/// exceeds both neighbors by more than jump_threshold (missing neighbors
/// count as 0). Ties resolve to the smallest k. Profiles with fewer than
/// 3 scores never flag a change.
std::optional<size_t> detect_scene_change(const MotionProfile& profile,
                                          double peak_threshold,
                                          double jump_threshold);

enum class ReclipAction { Keep, Split, Drop };

struct ReclipResult {
  ReclipAction action = ReclipAction::Keep;
  std::optional<Clip> replacement;  // set for Split
  std::string reason;               // set for Drop
};

/// Motion verdict for one clip: near-static clips are dropped; a clip
/// with an abrupt change at pair k is cut at local frame k+1, the longer
/// segment retained (equal lengths keep the earlier one), and detection
/// repeats on the sliced sub-profile until no change remains. A retained
/// segment shorter than min_clip_frames drops the clip.
ReclipResult reclip(const Clip& clip, const MotionProfile& profile,
                    const PipelineConfig& config);

}  // namespace vidpipe
