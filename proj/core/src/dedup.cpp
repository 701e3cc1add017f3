#include "vidpipe/dedup.hpp"

#include <algorithm>
#include <numeric>

#include "vidpipe/errors.hpp"

namespace vidpipe {

DedupResult dedup_group(const std::vector<Clip>& clips,
                        const std::vector<FeatureVector>& features,
                        double tau_dup) {
  if (clips.size() != features.size())
    throw InvalidRangeError("dedup_group: one feature per clip required");
  if (tau_dup < 0.0 || tau_dup > 1.0)
    throw InvalidRangeError("dedup_group: tau must be in [0,1]");

  std::vector<size_t> order(clips.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (clips[a].length() != clips[b].length())
      return clips[a].length() > clips[b].length();
    return clips[a].clip_id < clips[b].clip_id;
  });

  DedupResult result;
  std::vector<size_t> kept_indices;
  for (size_t i : order) {
    bool keep = true;
    for (size_t k : kept_indices) {
      double sim = cosine_similarity(features[i], features[k]);
      if (sim >= tau_dup) {
        result.removed.push_back({clips[i].clip_id, clips[k].clip_id, sim});
        keep = false;
        break;
      }
    }
    if (keep) {
      kept_indices.push_back(i);
      result.kept.push_back(clips[i].clip_id);
    }
  }
  return result;
}

}  // namespace vidpipe
