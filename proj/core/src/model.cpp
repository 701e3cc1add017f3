#include "vidpipe/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "vidpipe/errors.hpp"

namespace vidpipe {

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::Clip: return "clip";
    case Stage::Dedup: return "dedup";
    case Stage::Aesthetic: return "aesthetic";
    case Stage::Ocr: return "ocr";
    case Stage::Motion: return "motion";
    case Stage::Caption: return "caption";
  }
  throw Error("unknown stage");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Split: return "split";
  }
  throw Error("unknown verdict");
}

Stage stage_from_string(const std::string& name) {
  for (Stage stage : kAllStages) {
    if (to_string(stage) == name) return stage;
  }
  throw FormatError("unknown stage name: " + name);
}

Verdict verdict_from_string(const std::string& name) {
  if (name == "pass") return Verdict::Pass;
  if (name == "fail") return Verdict::Fail;
  if (name == "split") return Verdict::Split;
  throw FormatError("unknown verdict name: " + name);
}

int PipelineConfig::workers_for(Stage stage) const {
  auto it = worker_count.find(stage);
  return it == worker_count.end() ? 1 : it->second;
}

int PipelineConfig::prefetch_for(Stage stage) const {
  auto it = prefetch.find(stage);
  return it == prefetch.end() ? 1 : it->second;
}

void PipelineConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(tau_dup)) throw ConfigError("tau_dup must be in [0,1]");
  if (aesthetic_cutoff < 0.0 || aesthetic_cutoff > 10.0)
    throw ConfigError("aesthetic_cutoff must be in [0,10]");
  if (ocr_area_limit < 0) throw ConfigError("ocr_area_limit must be >= 0");
  if (pix_diff_threshold < 0 || pix_diff_threshold > 255)
    throw ConfigError("pix_diff_threshold must be in [0,255]");
  if (!in_unit(static_threshold))
    throw ConfigError("static_threshold must be in [0,1]");
  if (!in_unit(peak_threshold))
    throw ConfigError("peak_threshold must be in [0,1]");
  if (!in_unit(jump_threshold))
    throw ConfigError("jump_threshold must be in [0,1]");
  if (cut_threshold <= 0.0 || cut_threshold > 1.0)
    throw ConfigError("cut_threshold must be in (0,1]");
  if (min_clip_frames < 1) throw ConfigError("min_clip_frames must be >= 1");
  if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");

  if (stage_order.size() < 2) throw ConfigError("stage_order too short");
  if (stage_order.front() != Stage::Clip)
    throw ConfigError("stage_order must begin with clip");
  if (stage_order.back() != Stage::Caption)
    throw ConfigError("stage_order must end with caption");
  // Dedup consumes asset-granularity tasks straight from clipping, so it
  // cannot move behind the per-clip gates.
  if (stage_order.size() != kAllStages.size() ||
      stage_order[1] != Stage::Dedup)
    throw ConfigError("stage_order must contain all six stages with dedup second");
  std::vector<Stage> sorted = stage_order;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i] == sorted[i + 1])
      throw ConfigError("stage_order repeats a stage");
  }
  for (const auto& [stage, n] : worker_count) {
    if (n < 0) throw ConfigError("worker_count must be >= 0 for " + to_string(stage));
  }
  for (const auto& [stage, n] : prefetch) {
    if (n < 1) throw ConfigError("prefetch must be >= 1 for " + to_string(stage));
  }
}

Clip new_clip(const VideoAsset& asset, std::int64_t start, std::int64_t end,
              ClipOrigin origin) {
  if (start < 0 || start >= end || end > asset.frame_count) {
    throw InvalidRangeError("invalid clip range [" + std::to_string(start) +
                            "," + std::to_string(end) + ") for asset " +
                            asset.asset_id + " with " +
                            std::to_string(asset.frame_count) + " frames");
  }
  Clip clip;
  clip.asset_id = asset.asset_id;
  clip.start_frame = start;
  clip.end_frame = end;
  clip.origin = origin;
  clip.clip_id = asset.asset_id + ":" + std::to_string(start) + "-" +
                 std::to_string(end);
  return clip;
}

namespace {

bool parse_i64(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  auto result = std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc{} && result.ptr == text.data() + text.size();
}

}  // namespace

Clip parse_clip_id(const std::string& clip_id) {
  auto colon = clip_id.rfind(':');
  if (colon == std::string::npos || colon == 0)
    throw FormatError("not a clip id: " + clip_id);
  std::string_view range{clip_id.data() + colon + 1,
                         clip_id.size() - colon - 1};
  auto dash = range.find('-');
  if (dash == std::string_view::npos)
    throw FormatError("not a clip id: " + clip_id);
  Clip clip;
  if (!parse_i64(range.substr(0, dash), clip.start_frame) ||
      !parse_i64(range.substr(dash + 1), clip.end_frame))
    throw FormatError("not a clip id: " + clip_id);
  if (clip.start_frame < 0 || clip.start_frame >= clip.end_frame)
    throw FormatError("clip id has an empty range: " + clip_id);
  clip.asset_id = clip_id.substr(0, colon);
  clip.clip_id = clip_id;
  return clip;
}

bool is_clip_id(const std::string& id) {
  try {
    parse_clip_id(id);
    return true;
  } catch (const FormatError&) {
    return false;
  }
}

std::array<std::int64_t, 4> keyframe_indices(std::int64_t frame_count) {
  if (frame_count < 1) throw InvalidRangeError("keyframes of empty clip");
  std::array<std::int64_t, 4> out{};
  for (int i = 0; i < 4; ++i) {
    out[i] = std::llround(static_cast<double>(i) * (frame_count - 1) / 3.0);
  }
  return out;
}

}  // namespace vidpipe
