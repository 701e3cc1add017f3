#include "vidpipe/config_io.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

#include "vidpipe/errors.hpp"

namespace vidpipe {

using nlohmann::json;

void RunSettings::validate() const {
  pipeline.validate();
  if (text_detector != "sidecar" && text_detector != "command")
    throw ConfigError("text_detector must be sidecar or command");
  if (text_detector == "command" && text_detector_command.empty())
    throw ConfigError("text_detector=command needs text_detector_command");
  if (aesthetic_scorer != "reference" && aesthetic_scorer != "fixed")
    throw ConfigError("aesthetic_scorer must be reference or fixed");
  if (aesthetic_fixed_score < 0.0 || aesthetic_fixed_score > 10.0)
    throw ConfigError("aesthetic_fixed_score must be in [0,10]");
  if (caption_words < 1) throw ConfigError("caption_words must be >= 1");
}

namespace {

std::map<Stage, int> parse_stage_int_map(const json& j, const char* key) {
  std::map<Stage, int> out;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_number_integer())
      throw ConfigError(std::string(key) + "." + name + " must be an integer");
    out[stage_from_string(name)] = value.get<int>();
  }
  return out;
}

}  // namespace

RunSettings parse_settings(const std::string& json_text,
                           const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": expected a JSON object");

  static const std::set<std::string> known = {
      "tau_dup",          "aesthetic_cutoff",     "ocr_area_limit",
      "pix_diff_threshold", "static_threshold",   "peak_threshold",
      "jump_threshold",   "cut_threshold",        "min_clip_frames",
      "max_attempts",     "stage_order",          "workers",
      "prefetch",         "assets_dir",           "sidecar_path",
      "text_detector",    "text_detector_command", "aesthetic_scorer",
      "aesthetic_fixed_score", "caption_endpoint", "caption_words",
      "decode_command",
  };
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key))
      throw ConfigError(origin + ": unknown config key \"" + key + "\"");
  }

  RunSettings s;
  try {
    auto& p = s.pipeline;
    if (j.contains("tau_dup")) p.tau_dup = j["tau_dup"].get<double>();
    if (j.contains("aesthetic_cutoff"))
      p.aesthetic_cutoff = j["aesthetic_cutoff"].get<double>();
    if (j.contains("ocr_area_limit"))
      p.ocr_area_limit = j["ocr_area_limit"].get<std::int64_t>();
    if (j.contains("pix_diff_threshold"))
      p.pix_diff_threshold = j["pix_diff_threshold"].get<int>();
    if (j.contains("static_threshold"))
      p.static_threshold = j["static_threshold"].get<double>();
    if (j.contains("peak_threshold"))
      p.peak_threshold = j["peak_threshold"].get<double>();
    if (j.contains("jump_threshold"))
      p.jump_threshold = j["jump_threshold"].get<double>();
    if (j.contains("cut_threshold"))
      p.cut_threshold = j["cut_threshold"].get<double>();
    if (j.contains("min_clip_frames"))
      p.min_clip_frames = j["min_clip_frames"].get<std::int64_t>();
    if (j.contains("max_attempts"))
      p.max_attempts = j["max_attempts"].get<int>();
    if (j.contains("stage_order")) {
      p.stage_order.clear();
      for (const auto& name : j["stage_order"])
        p.stage_order.push_back(stage_from_string(name.get<std::string>()));
    }
    if (j.contains("workers"))
      p.worker_count = parse_stage_int_map(j["workers"], "workers");
    if (j.contains("prefetch"))
      p.prefetch = parse_stage_int_map(j["prefetch"], "prefetch");

    if (j.contains("assets_dir")) s.assets_dir = j["assets_dir"];
    if (j.contains("sidecar_path")) s.sidecar_path = j["sidecar_path"];
    if (j.contains("text_detector")) s.text_detector = j["text_detector"];
    if (j.contains("text_detector_command"))
      s.text_detector_command = j["text_detector_command"];
    if (j.contains("aesthetic_scorer"))
      s.aesthetic_scorer = j["aesthetic_scorer"];
    if (j.contains("aesthetic_fixed_score"))
      s.aesthetic_fixed_score = j["aesthetic_fixed_score"].get<double>();
    if (j.contains("caption_endpoint"))
      s.caption_endpoint = j["caption_endpoint"];
    if (j.contains("caption_words"))
      s.caption_words = j["caption_words"].get<std::int64_t>();
    if (j.contains("decode_command")) s.decode_command = j["decode_command"];
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": bad value type: " + e.what());
  } catch (const FormatError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return s;
}

RunSettings load_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_settings(text, path);
}

std::vector<Stage> parse_stage_order(const std::string& csv) {
  std::vector<Stage> out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    std::string name = csv.substr(pos, comma - pos);
    if (!name.empty()) {
      try {
        out.push_back(stage_from_string(name));
      } catch (const FormatError& e) {
        throw ConfigError(e.what());
      }
    }
    pos = comma + 1;
  }
  return out;
}

std::pair<Stage, int> parse_worker_spec(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("worker spec must be stage=N, got " + spec);
  Stage stage;
  try {
    stage = stage_from_string(spec.substr(0, eq));
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
  int n;
  try {
    n = std::stoi(spec.substr(eq + 1));
  } catch (const std::exception&) {
    throw ConfigError("worker spec must be stage=N, got " + spec);
  }
  if (n < 0) throw ConfigError("worker count must be >= 0");
  return {stage, n};
}

}  // namespace vidpipe
