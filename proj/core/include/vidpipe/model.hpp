#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vidpipe {

enum class Stage { Clip, Dedup, Aesthetic, Ocr, Motion, Caption };

enum class Verdict { Pass, Fail, Split };

enum class ClipOrigin { SceneCut, Reclip };

constexpr std::array<Stage, 6> kAllStages = {Stage::Clip,   Stage::Dedup,
                                             Stage::Aesthetic, Stage::Ocr,
                                             Stage::Motion, Stage::Caption};

std::string to_string(Stage stage);
std::string to_string(Verdict verdict);
Stage stage_from_string(const std::string& name);
Verdict verdict_from_string(const std::string& name);

/// A source video registered with the pipeline.
struct VideoAsset {
  std::string asset_id;
  std::string source_path;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::uint32_t fps_num = 0;
  std::uint32_t fps_den = 1;
  std::int64_t frame_count = 0;
  int channels = 1;
};

/// A contiguous frame range of an asset; the unit every stage operates on.
/// end_frame is exclusive so lengths add without corrections.
struct Clip {
  std::string clip_id;
  std::string asset_id;
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;
  ClipOrigin origin = ClipOrigin::SceneCut;

  std::int64_t length() const { return end_frame - start_frame; }
};

/// Journal record of one stage's verdict for one clip.
struct StageOutcome {
  std::string clip_id;
  Stage stage = Stage::Clip;
  Verdict verdict = Verdict::Pass;
  std::optional<double> score;
  std::map<std::string, std::string> detail;
  double wall_time = 0.0;  // seconds
  std::string worker_id;
  std::int64_t timestamp = 0;  // nanoseconds since epoch
};

/// Broker message carrying an asset or clip id to a stage queue.
struct Task {
  std::string task_id;
  std::string id;  // clip_id, or asset_id for the clip/dedup queues
  Stage target_stage = Stage::Clip;
  int attempt = 1;
};

struct PipelineConfig {
  double tau_dup = 0.9;
  double aesthetic_cutoff = 4.5;
  std::int64_t ocr_area_limit = 20000;
  int pix_diff_threshold = 25;
  double static_threshold = 0.01;
  double peak_threshold = 0.5;
  double jump_threshold = 0.3;
  double cut_threshold = 0.12;
  std::int64_t min_clip_frames = 15;
  int max_attempts = 3;
  std::vector<Stage> stage_order = {Stage::Clip,   Stage::Dedup,
                                    Stage::Aesthetic, Stage::Ocr,
                                    Stage::Motion, Stage::Caption};
  std::map<Stage, int> worker_count;  // default 1 per stage
  std::map<Stage, int> prefetch;      // default 1 per stage

  int workers_for(Stage stage) const;
  int prefetch_for(Stage stage) const;

  /// Throws ConfigError when a threshold is out of range or the stage
  /// order is not clip, dedup, ..., caption.
  void validate() const;
};

/// Builds a clip over [start, end) of the asset. The id is deterministic,
/// "<asset_id>:<start>-<end>", so re-running a stage after a crash
/// produces identical ids.
Clip new_clip(const VideoAsset& asset, std::int64_t start, std::int64_t end,
              ClipOrigin origin);

/// Inverse of the clip id rule. Throws FormatError when the id does not
/// look like "<asset>:<start>-<end>".
Clip parse_clip_id(const std::string& clip_id);

/// True when the id carries a frame range (i.e. names a clip rather than
/// an asset).
bool is_clip_id(const std::string& id);

/// The 4 uniformly sampled frame indices used for features, gates and
/// captioning: round(i * (n - 1) / 3) for i = 0..3.
std::array<std::int64_t, 4> keyframe_indices(std::int64_t frame_count);

}  // namespace vidpipe
