#pragma once

#include <string>
#include <vector>

#include "vidpipe/features.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

struct DedupRemoval {
  std::string clip_id;
  std::string partner_id;  // first kept clip it duplicated
  double similarity = 0.0;
};

struct DedupResult {
  std::vector<std::string> kept;  // in visit order (length desc, id asc)
  std::vector<DedupRemoval> removed;
};

/// Greedy near-duplicate removal within one group of clips. Clips are
/// visited sorted by (length descending, clip_id ascending); a clip is
/// kept iff its similarity to every already-kept clip is below tau_dup,
/// otherwise it is removed with its first offending kept partner.
/// Similarity at exactly tau_dup removes. Output does not depend on the
/// input ordering.
DedupResult dedup_group(const std::vector<Clip>& clips,
                        const std::vector<FeatureVector>& features,
                        double tau_dup);

}  // namespace vidpipe
