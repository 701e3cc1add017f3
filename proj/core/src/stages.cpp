#include "vidpipe/stages.hpp"

#include <algorithm>

#include "vidpipe/dedup.hpp"
#include "vidpipe/errors.hpp"
#include "vidpipe/motion.hpp"
#include "vidpipe/rvid.hpp"
#include "vidpipe/scene.hpp"

namespace vidpipe {

std::string join_clip_ids(const std::vector<Clip>& clips) {
  std::string out;
  for (const Clip& clip : clips) {
    if (!out.empty()) out.push_back(',');
    out += clip.clip_id;
  }
  return out;
}

std::vector<std::string> split_clip_ids(const std::string& joined) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < joined.size()) {
    size_t comma = joined.find(',', pos);
    if (comma == std::string::npos) comma = joined.size();
    if (comma > pos) out.push_back(joined.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::optional<std::vector<StageOutcome>> StageLogic::journaled(
    const StageContext& ctx, const Task& task) const {
  auto record = ctx.journal->find(task.id, stage());
  if (!record) return std::nullopt;
  return std::vector<StageOutcome>{std::move(*record)};
}

namespace {

class ClipStageLogic final : public StageLogic {
 public:
  Stage stage() const override { return Stage::Clip; }

  std::vector<StageOutcome> execute(const StageContext& ctx,
                                    const Task& task) const override {
    const PipelineConfig& cfg = *ctx.config;
    VideoAsset asset = ctx.store->meta(task.id);
    VideoFile file(asset.source_path);
    CutList cuts = detect_cuts(
        task.id, asset.frame_count,
        [&file](std::int64_t i) { return to_grayscale(file.read_frame(i)); },
        cfg.cut_threshold, cfg.min_clip_frames);
    std::vector<Clip> clips =
        split_into_clips(asset, cuts, cfg.min_clip_frames);

    StageOutcome outcome;
    outcome.clip_id = task.id;
    outcome.stage = Stage::Clip;
    outcome.detail["count"] = std::to_string(clips.size());
    if (clips.empty()) {
      outcome.verdict = Verdict::Fail;
      outcome.detail["reason"] = "no_clips";
    } else {
      outcome.verdict = Verdict::Pass;
      outcome.detail["clips"] = join_clip_ids(clips);
    }
    return {outcome};
  }
};

class DedupStageLogic final : public StageLogic {
 public:
  Stage stage() const override { return Stage::Dedup; }

  std::optional<std::vector<StageOutcome>> journaled(
      const StageContext& ctx, const Task& task) const override {
    auto clip_ids = asset_clip_ids(ctx, task.id);
    std::vector<StageOutcome> records;
    for (const std::string& id : clip_ids) {
      auto record = ctx.journal->find(id, Stage::Dedup);
      if (!record) return std::nullopt;
      records.push_back(std::move(*record));
    }
    return records;  // empty asset: complete with nothing to do
  }

  std::vector<StageOutcome> execute(const StageContext& ctx,
                                    const Task& task) const override {
    auto clip_ids = asset_clip_ids(ctx, task.id);
    std::vector<Clip> clips;
    clips.reserve(clip_ids.size());
    for (const std::string& id : clip_ids) clips.push_back(parse_clip_id(id));

    std::vector<FeatureVector> features;
    features.reserve(clips.size());
    for (const Clip& clip : clips) {
      auto frames = ctx.store->load_clip_frames(clip);
      features.push_back(ctx.features->extract(frames));
    }
    DedupResult result = dedup_group(clips, features, ctx.config->tau_dup);

    // emit records in the greedy visit order (length desc, id asc)
    std::vector<size_t> order(clips.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (clips[a].length() != clips[b].length())
        return clips[a].length() > clips[b].length();
      return clips[a].clip_id < clips[b].clip_id;
    });

    std::vector<StageOutcome> records;
    for (size_t i : order) {
      const std::string& id = clips[i].clip_id;
      StageOutcome outcome;
      outcome.clip_id = id;
      outcome.stage = Stage::Dedup;
      auto removed = std::find_if(
          result.removed.begin(), result.removed.end(),
          [&](const DedupRemoval& r) { return r.clip_id == id; });
      if (removed != result.removed.end()) {
        outcome.verdict = Verdict::Fail;
        outcome.score = removed->similarity;
        outcome.detail["partner"] = removed->partner_id;
      } else {
        outcome.verdict = Verdict::Pass;
      }
      records.push_back(std::move(outcome));
    }
    return records;
  }

 private:
  static std::vector<std::string> asset_clip_ids(const StageContext& ctx,
                                                 const std::string& asset_id) {
    auto clip_record = ctx.journal->find(asset_id, Stage::Clip);
    if (!clip_record)
      throw Error("dedup task for " + asset_id + " without a clip record");
    if (clip_record->verdict != Verdict::Pass) return {};
    auto it = clip_record->detail.find("clips");
    if (it == clip_record->detail.end()) return {};
    return split_clip_ids(it->second);
  }
};

class AestheticStageLogic final : public StageLogic {
 public:
  Stage stage() const override { return Stage::Aesthetic; }

  std::vector<StageOutcome> execute(const StageContext& ctx,
                                    const Task& task) const override {
    Clip clip = parse_clip_id(task.id);
    auto keyframes = ctx.store->load_keyframes(clip);
    double score = ctx.aesthetic->score(keyframes.frames);
    StageOutcome outcome;
    outcome.clip_id = task.id;
    outcome.stage = Stage::Aesthetic;
    outcome.score = score;
    outcome.verdict = aesthetic_gate(score, ctx.config->aesthetic_cutoff)
                          ? Verdict::Pass
                          : Verdict::Fail;
    return {outcome};
  }
};

class OcrStageLogic final : public StageLogic {
 public:
  Stage stage() const override { return Stage::Ocr; }

  std::vector<StageOutcome> execute(const StageContext& ctx,
                                    const Task& task) const override {
    Clip clip = parse_clip_id(task.id);
    auto keyframes = ctx.store->load_keyframes(clip);
    std::vector<BoundingBox> boxes;
    for (size_t i = 0; i < keyframes.frames.size(); ++i) {
      KeyframeRef ref{clip.asset_id, keyframes.absolute_indices[i]};
      auto found = ctx.text->detect(ref, keyframes.frames[i]);
      boxes.insert(boxes.end(), found.begin(), found.end());
    }
    StageOutcome outcome;
    outcome.clip_id = task.id;
    outcome.stage = Stage::Ocr;
    outcome.verdict = ocr_gate(boxes, ctx.config->ocr_area_limit)
                          ? Verdict::Pass
                          : Verdict::Fail;
    if (!boxes.empty()) {
      std::int64_t max_area = 0;
      for (const BoundingBox& box : boxes)
        max_area = std::max(max_area, box.area());
      outcome.detail["boxes"] = std::to_string(boxes.size());
      outcome.detail["max_box_area"] = std::to_string(max_area);
    }
    return {outcome};
  }
};

class MotionStageLogic final : public StageLogic {
 public:
  Stage stage() const override { return Stage::Motion; }

  std::vector<StageOutcome> execute(const StageContext& ctx,
                                    const Task& task) const override {
    Clip clip = parse_clip_id(task.id);
    auto frames = ctx.store->load_clip_frames(clip);
    MotionProfile profile =
        motion_profile(task.id, frames, ctx.config->pix_diff_threshold);
    ReclipResult rr = reclip(clip, profile, *ctx.config);

    StageOutcome outcome;
    outcome.clip_id = task.id;
    outcome.stage = Stage::Motion;
    outcome.score = profile.average;
    switch (rr.action) {
      case ReclipAction::Keep:
        outcome.verdict = Verdict::Pass;
        break;
      case ReclipAction::Drop:
        outcome.verdict = Verdict::Fail;
        outcome.detail["reason"] = rr.reason;
        break;
      case ReclipAction::Split:
        outcome.verdict = Verdict::Split;
        outcome.detail["replacement"] = rr.replacement->clip_id;
        break;
    }
    return {outcome};
  }
};

class CaptionStageLogic final : public StageLogic {
 public:
  Stage stage() const override { return Stage::Caption; }

  std::vector<StageOutcome> execute(const StageContext& ctx,
                                    const Task& task) const override {
    Clip clip = parse_clip_id(task.id);
    auto keyframes = ctx.store->load_keyframes(clip);
    CaptionRequest request;
    request.clip_id = task.id;
    request.frame_refs = keyframes.local_indices;
    request.frames = std::move(keyframes.frames);
    request.prompt = default_prompt();
    Caption caption = ctx.captions->request_caption(request);

    StageOutcome outcome;
    outcome.clip_id = task.id;
    outcome.stage = Stage::Caption;
    outcome.verdict = Verdict::Pass;
    outcome.detail["text"] = caption.text;
    outcome.detail["words"] = std::to_string(caption.word_count);
    return {outcome};
  }
};

}  // namespace

std::unique_ptr<StageLogic> make_stage_logic(Stage stage) {
  switch (stage) {
    case Stage::Clip: return std::make_unique<ClipStageLogic>();
    case Stage::Dedup: return std::make_unique<DedupStageLogic>();
    case Stage::Aesthetic: return std::make_unique<AestheticStageLogic>();
    case Stage::Ocr: return std::make_unique<OcrStageLogic>();
    case Stage::Motion: return std::make_unique<MotionStageLogic>();
    case Stage::Caption: return std::make_unique<CaptionStageLogic>();
  }
  throw Error("unknown stage");
}

}  // namespace vidpipe
