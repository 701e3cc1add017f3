#include "doctest.h"

#include "vidpipe/errors.hpp"
#include "vidpipe/model.hpp"

using namespace vidpipe;

namespace {

VideoAsset asset_with_frames(std::int64_t n) {
  VideoAsset a;
  a.asset_id = "A";
  a.width = 64;
  a.height = 64;
  a.fps_num = 30;
  a.frame_count = n;
  return a;
}

}  // namespace

TEST_CASE("clip ids are deterministic over (asset, range)") {
  VideoAsset a = asset_with_frames(100);
  CHECK(new_clip(a, 0, 100, ClipOrigin::SceneCut).clip_id == "A:0-100");
  CHECK(new_clip(a, 41, 100, ClipOrigin::Reclip).clip_id == "A:41-100");
  CHECK(new_clip(a, 41, 100, ClipOrigin::Reclip).clip_id ==
        new_clip(a, 41, 100, ClipOrigin::SceneCut).clip_id);
}

TEST_CASE("clip range validation") {
  VideoAsset a = asset_with_frames(100);
  CHECK_THROWS_AS(new_clip(a, 50, 50, ClipOrigin::SceneCut),
                  InvalidRangeError);
  CHECK_THROWS_AS(new_clip(a, -1, 10, ClipOrigin::SceneCut),
                  InvalidRangeError);
  CHECK_THROWS_AS(new_clip(a, 90, 101, ClipOrigin::SceneCut),
                  InvalidRangeError);
}

TEST_CASE("parse_clip_id inverts the id rule") {
  VideoAsset a = asset_with_frames(3000);
  for (auto [s, e] : {std::pair<std::int64_t, std::int64_t>{0, 100},
                      {41, 100},
                      {299, 2999}}) {
    Clip made = new_clip(a, s, e, ClipOrigin::SceneCut);
    Clip parsed = parse_clip_id(made.clip_id);
    CHECK(parsed.asset_id == "A");
    CHECK(parsed.start_frame == s);
    CHECK(parsed.end_frame == e);
  }
  // asset ids containing ':' still parse from the right
  Clip parsed = parse_clip_id("ns:video:5-9");
  CHECK(parsed.asset_id == "ns:video");
  CHECK(parsed.start_frame == 5);

  CHECK_THROWS_AS(parse_clip_id("plainasset"), FormatError);
  CHECK_THROWS_AS(parse_clip_id("A:9-9"), FormatError);
  CHECK(is_clip_id("A:0-10"));
  CHECK_FALSE(is_clip_id("A"));
}

TEST_CASE("config defaults equal the published constants") {
  PipelineConfig cfg;
  CHECK(cfg.tau_dup == 0.9);
  CHECK(cfg.aesthetic_cutoff == 4.5);
  CHECK(cfg.ocr_area_limit == 20000);
  CHECK(cfg.pix_diff_threshold == 25);
  CHECK(cfg.static_threshold == 0.01);
  CHECK(cfg.peak_threshold == 0.5);
  CHECK(cfg.jump_threshold == 0.3);
  CHECK(cfg.cut_threshold == 0.12);
  CHECK(cfg.min_clip_frames == 15);
  CHECK(cfg.stage_order.front() == Stage::Clip);
  CHECK(cfg.stage_order.back() == Stage::Caption);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config validation rejects out-of-range values") {
  PipelineConfig cfg;
  cfg.tau_dup = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = {};
  cfg.cut_threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = {};
  cfg.stage_order = {Stage::Dedup, Stage::Clip, Stage::Aesthetic, Stage::Ocr,
                     Stage::Motion, Stage::Caption};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = {};
  cfg.stage_order = {Stage::Clip, Stage::Dedup, Stage::Aesthetic, Stage::Ocr,
                     Stage::Motion};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  // gates may be reordered between dedup and caption
  cfg = {};
  cfg.stage_order = {Stage::Clip,  Stage::Dedup, Stage::Ocr,
                     Stage::Aesthetic, Stage::Motion, Stage::Caption};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("stage and verdict names round-trip") {
  for (Stage stage : kAllStages)
    CHECK(stage_from_string(to_string(stage)) == stage);
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Split})
    CHECK(verdict_from_string(to_string(v)) == v);
  CHECK_THROWS_AS(stage_from_string("bogus"), FormatError);
}

TEST_CASE("keyframe sampling covers first and last frames") {
  auto one = keyframe_indices(1);
  CHECK(one == std::array<std::int64_t, 4>{0, 0, 0, 0});
  auto two = keyframe_indices(2);
  CHECK(two == std::array<std::int64_t, 4>{0, 0, 1, 1});
  auto hundred = keyframe_indices(100);
  CHECK(hundred == std::array<std::int64_t, 4>{0, 33, 66, 99});
  for (std::int64_t n = 1; n <= 200; ++n) {
    auto idx = keyframe_indices(n);
    CHECK(idx[0] == 0);
    CHECK(idx[3] == n - 1);
    for (int i = 0; i + 1 < 4; ++i) CHECK(idx[i] <= idx[i + 1]);
  }
}
