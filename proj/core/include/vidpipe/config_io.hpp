#pragma once

#include <cstdint>
#include <string>

#include "vidpipe/model.hpp"

namespace vidpipe {

/// Everything a run needs beyond the pipeline thresholds: adapter
/// selection, asset/sidecar locations, the captioning endpoint, and the
/// external decode hook for ingestion.
struct RunSettings {
  PipelineConfig pipeline;
  std::string assets_dir;
  std::string sidecar_path;
  std::string text_detector = "sidecar";       // sidecar | command
  std::string text_detector_command;           // {asset} {frame} placeholders
  std::string aesthetic_scorer = "reference";  // reference | fixed
  double aesthetic_fixed_score = 5.0;
  std::string caption_endpoint;  // host:port; empty runs the builtin mock
  std::int64_t caption_words = 84;
  std::string decode_command;  // {input} {output} placeholders

  void validate() const;
};

/// Parses a JSON settings file. Unknown keys are rejected.
RunSettings load_settings(const std::string& path);
RunSettings parse_settings(const std::string& json_text,
                           const std::string& origin);

/// Comma-separated stage names -> stage order (validated later as part of
/// PipelineConfig).
std::vector<Stage> parse_stage_order(const std::string& csv);

/// "stage=N" pairs for --workers style overrides.
std::pair<Stage, int> parse_worker_spec(const std::string& spec);

}  // namespace vidpipe
