#pragma once

// Independent brute-force re-implementations of the stage math, used to
// pin expected values. Nothing here shares code with the production path
// beyond the core domain types.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vidpipe/features.hpp"
#include "vidpipe/frame.hpp"
#include "vidpipe/model.hpp"
#include "vidpipe/motion.hpp"

namespace vidpipe::oracle {

BinaryMask mask_of(const Frame& a, const Frame& b, int pix_diff_threshold);
BinaryMask erode3x3(const BinaryMask& in);
BinaryMask dilate3x3(const BinaryMask& in);
BinaryMask refine(const BinaryMask& in);
double score_of(const BinaryMask& mask);
MotionProfile motion_profile(const std::string& clip_id,
                             const std::vector<Frame>& frames,
                             int pix_diff_threshold);

struct ReclipOutcome {
  enum class Action { Keep, Split, Drop } action = Action::Keep;
  std::int64_t lo = 0;  // retained clip-local frame window [lo, hi)
  std::int64_t hi = 0;
  std::string reason;
};

/// Explicit recursion over score slices.
ReclipOutcome reclip(const std::vector<double>& scores,
                     std::int64_t clip_length, double static_threshold,
                     double peak_threshold, double jump_threshold,
                     std::int64_t min_clip_frames);

/// Exhaustive pairwise similarity matrix plus an explicit greedy walk;
/// returns kept clip ids.
std::vector<std::string> dedup_kept(const std::vector<Clip>& clips,
                                    const std::vector<FeatureVector>& features,
                                    double tau);

struct DedupRemovalOutcome {
  std::string clip_id;
  std::string partner_id;
  double similarity = 0.0;
};
struct DedupOutcome {
  std::vector<std::string> kept;
  std::vector<DedupRemovalOutcome> removed;
};
DedupOutcome dedup_full(const std::vector<Clip>& clips,
                        const std::vector<FeatureVector>& features,
                        double tau);

/// Candidate-by-candidate evaluation of the cut suppression rule.
std::vector<std::int64_t> cuts(const std::vector<Frame>& gray_frames,
                               double cut_threshold,
                               std::int64_t min_clip_frames);

/// [start, end) segments between cuts with the short-residual drop rule.
std::vector<std::pair<std::int64_t, std::int64_t>> partition(
    std::int64_t frame_count, const std::vector<std::int64_t>& cut_points,
    std::int64_t min_clip_frames);

/// Naive re-evaluation of the reference aesthetic formula.
double aesthetic(const std::vector<Frame>& keyframes);

/// Naive block-mean feature (8x8 grid, 4 uniform keyframes, L2 normalized).
FeatureVector feature(const std::vector<Frame>& frames);

}  // namespace vidpipe::oracle
