#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vidpipe/asset_store.hpp"
#include "vidpipe/caption.hpp"
#include "vidpipe/features.hpp"
#include "vidpipe/gates.hpp"
#include "vidpipe/journal.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

/// Dependencies a stage handler needs. Non-owning; the runner (or test)
/// keeps everything alive for the duration of the run.
struct StageContext {
  const PipelineConfig* config = nullptr;
  const AssetStore* store = nullptr;
  Journal* journal = nullptr;
  const FeatureExtractor* features = nullptr;
  const AestheticScorer* aesthetic = nullptr;
  const TextDetector* text = nullptr;
  CaptionClient* captions = nullptr;
};

/// One stage's compute, split from the generic worker loop so replays can
/// skip it. journaled() reports the records already present for a task
/// (idempotent resume); execute() computes them fresh. Handlers are pure
/// given their adapters: identical inputs yield identical records.
class StageLogic {
 public:
  virtual ~StageLogic() = default;
  virtual Stage stage() const = 0;

  /// All effective records for this task when the journal already covers
  /// it completely; nullopt when (re)computation is required.
  virtual std::optional<std::vector<StageOutcome>> journaled(
      const StageContext& ctx, const Task& task) const;

  /// Fresh outcome records. Timing/identity fields are filled by the
  /// caller.
  virtual std::vector<StageOutcome> execute(const StageContext& ctx,
                                            const Task& task) const = 0;
};

std::unique_ptr<StageLogic> make_stage_logic(Stage stage);

/// Comma-joined clip ids stored in the clip stage's detail map.
std::string join_clip_ids(const std::vector<Clip>& clips);
std::vector<std::string> split_clip_ids(const std::string& joined);

}  // namespace vidpipe
