#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vidpipe/caption.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

/// Total wall time per stage for a fixed batch, in whatever unit the
/// caller uses; order is the stage order.
struct StageTimings {
  std::vector<std::pair<std::string, double>> times;
};

struct EfficiencyReport {
  double t_sequential = 0.0;  // sum of stage times
  double t_pipelined = 0.0;   // bottleneck stage time
  double efficiency = 1.0;    // t_sequential / t_pipelined
  std::string bottleneck_stage;
};

/// Steady-state pipelining model: sequential time is the sum, pipelined
/// time the bottleneck stage. Ties pick the first stage in order; a
/// non-positive time is an error.
EfficiencyReport efficiency(const StageTimings& timings);

/// 100 * (pass or split) / all outcomes of the stage; nullopt when the
/// stage processed nothing.
std::optional<double> pass_rate(std::span<const StageOutcome> records,
                                Stage stage);

struct CaptionStats {
  std::int64_t count = 0;
  std::optional<double> mean_words;
  std::map<std::int64_t, std::int64_t> histogram;  // bucket 10k = [10k, 10k+10)
  std::optional<double> fraction_50_120;           // inclusive bounds
};

CaptionStats caption_stats(std::span<const Caption> captions);

struct StageRow {
  Stage stage = Stage::Clip;
  std::int64_t processed = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t split = 0;
  std::optional<double> pass_rate;
  double wall_total = 0.0;  // seconds
};

struct ThroughputReport {
  std::vector<StageRow> rows;  // in stage order
  /// Over stages with measured time, caption excluded (the captioner sits
  /// outside the batch timing model).
  std::optional<EfficiencyReport> pipeline_efficiency;
  CaptionStats captions;
};

ThroughputReport throughput_report(std::span<const StageOutcome> records,
                                   const std::vector<Stage>& stage_order);

/// Captions recorded in the journal (caption-stage pass records).
std::vector<Caption> captions_from_journal(
    std::span<const StageOutcome> records);

std::string render_text(const ThroughputReport& report);
std::string render_json(const ThroughputReport& report);

}  // namespace vidpipe
