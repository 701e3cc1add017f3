#include "vidpipe/motion.hpp"

#include <algorithm>
#include <cstdlib>

#include "vidpipe/errors.hpp"

namespace vidpipe {

namespace {

// Erosion (all = true) or dilation (all = false) with a 3x3 window and
// clamped (edge-replicate) coordinates.
BinaryMask morph3x3(const BinaryMask& in, bool erode) {
  BinaryMask out(in.width, in.height);
  for (std::int64_t y = 0; y < in.height; ++y) {
    for (std::int64_t x = 0; x < in.width; ++x) {
      std::uint8_t acc = erode ? 1 : 0;
      for (int dy = -1; dy <= 1; ++dy) {
        std::int64_t yy = std::clamp<std::int64_t>(y + dy, 0, in.height - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          std::int64_t xx = std::clamp<std::int64_t>(x + dx, 0, in.width - 1);
          std::uint8_t v = in.at(xx, yy);
          acc = erode ? (acc & v) : (acc | v);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace

BinaryMask motion_mask(const Frame& a, const Frame& b,
                       int pix_diff_threshold) {
  if (a.width != b.width || a.height != b.height || a.channels != 1 ||
      b.channels != 1)
    throw DimensionError("motion_mask expects equal-size grayscale frames");
  BinaryMask mask(a.width, a.height);
  const std::int64_t n = a.pixel_count();
  for (std::int64_t i = 0; i < n; ++i) {
    int diff = std::abs(static_cast<int>(a.pixels[i]) -
                        static_cast<int>(b.pixels[i]));
    mask.bits[static_cast<size_t>(i)] = diff > pix_diff_threshold ? 1 : 0;
  }
  return mask;
}

BinaryMask refine_mask(const BinaryMask& mask) {
  // opening: erode then dilate; closing: dilate then erode
  BinaryMask opened = morph3x3(morph3x3(mask, true), false);
  return morph3x3(morph3x3(opened, false), true);
}

double motion_score(const BinaryMask& mask) {
  std::uint64_t ones = 0;
  for (std::uint8_t b : mask.bits) ones += b;
  return static_cast<double>(ones) /
         static_cast<double>(mask.width * mask.height);
}

MotionProfile motion_profile(const std::string& clip_id,
                             std::span<const Frame> frames,
                             int pix_diff_threshold) {
  if (frames.size() < 2)
    throw InvalidRangeError("motion_profile needs at least 2 frames");
  MotionProfile profile;
  profile.clip_id = clip_id;
  profile.scores.reserve(frames.size() - 1);
  for (size_t k = 0; k + 1 < frames.size(); ++k) {
    BinaryMask raw = motion_mask(frames[k], frames[k + 1], pix_diff_threshold);
    profile.scores.push_back(motion_score(refine_mask(raw)));
  }
  double sum = 0.0;
  for (double s : profile.scores) sum += s;
  profile.average = sum / static_cast<double>(profile.scores.size());
  return profile;
}

bool is_static(const MotionProfile& profile, double static_threshold) {
  return profile.average < static_threshold;
}

std::optional<size_t> detect_scene_change(const MotionProfile& profile,
                                          double peak_threshold,
                                          double jump_threshold) {
  const auto& s = profile.scores;
  if (s.size() < 3) return std::nullopt;
  size_t k = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[k]) k = i;
  }
  double left = k > 0 ? s[k - 1] : 0.0;
  double right = k + 1 < s.size() ? s[k + 1] : 0.0;
  if (s[k] > peak_threshold && s[k] - left > jump_threshold &&
      s[k] - right > jump_threshold)
    return k;
  return std::nullopt;
}

ReclipResult reclip(const Clip& clip, const MotionProfile& profile,
                    const PipelineConfig& config) {
  if (static_cast<std::int64_t>(profile.scores.size()) != clip.length() - 1)
    throw InvalidRangeError("reclip: profile does not match clip length");

  ReclipResult result;
  if (is_static(profile, config.static_threshold)) {
    result.action = ReclipAction::Drop;
    result.reason = "static";
    return result;
  }

  // Local frame window into the clip; scores for [lo, hi) are
  // profile.scores[lo .. hi-1). Slicing is exact because each score only
  // depends on its own frame pair.
  std::int64_t lo = 0;
  std::int64_t hi = clip.length();
  while (true) {
    MotionProfile window;
    window.scores.assign(profile.scores.begin() + lo,
                         profile.scores.begin() + (hi - 1));
    auto change = detect_scene_change(window, config.peak_threshold,
                                      config.jump_threshold);
    if (!change) break;
    std::int64_t cut = lo + static_cast<std::int64_t>(*change) + 1;
    std::int64_t left_len = cut - lo;
    std::int64_t right_len = hi - cut;
    if (left_len >= right_len) {
      hi = cut;  // ties keep the earlier segment
    } else {
      lo = cut;
    }
    if (hi - lo < config.min_clip_frames) {
      result.action = ReclipAction::Drop;
      result.reason = "reclip_too_short";
      return result;
    }
  }

  if (lo == 0 && hi == clip.length()) {
    result.action = ReclipAction::Keep;
    return result;
  }
  VideoAsset bounds;
  bounds.asset_id = clip.asset_id;
  bounds.frame_count = clip.end_frame;  // upper bound for range checking
  result.action = ReclipAction::Split;
  result.replacement = new_clip(bounds, clip.start_frame + lo,
                                clip.start_frame + hi, ClipOrigin::Reclip);
  return result;
}

}  // namespace vidpipe
