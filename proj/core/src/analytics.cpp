#include "vidpipe/analytics.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "vidpipe/errors.hpp"

namespace vidpipe {

using nlohmann::json;

EfficiencyReport efficiency(const StageTimings& timings) {
  if (timings.times.empty())
    throw InvalidRangeError("efficiency needs at least one stage");
  EfficiencyReport report;
  report.t_sequential = 0.0;
  double best = -1.0;
  for (const auto& [name, t] : timings.times) {
    if (t <= 0.0)
      throw InvalidRangeError("non-positive stage time for " + name);
    report.t_sequential += t;
    if (t > best) {
      best = t;
      report.bottleneck_stage = name;
    }
  }
  report.t_pipelined = best;
  report.efficiency = report.t_sequential / report.t_pipelined;
  return report;
}

std::optional<double> pass_rate(std::span<const StageOutcome> records,
                                Stage stage) {
  std::int64_t total = 0;
  std::int64_t advanced = 0;
  for (const StageOutcome& r : records) {
    if (r.stage != stage) continue;
    ++total;
    if (r.verdict == Verdict::Pass || r.verdict == Verdict::Split) ++advanced;
  }
  if (total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(advanced) / static_cast<double>(total);
}

CaptionStats caption_stats(std::span<const Caption> captions) {
  CaptionStats stats;
  stats.count = static_cast<std::int64_t>(captions.size());
  if (stats.count == 0) return stats;
  std::int64_t total_words = 0;
  std::int64_t in_range = 0;
  for (const Caption& c : captions) {
    total_words += c.word_count;
    stats.histogram[c.word_count / 10 * 10] += 1;
    if (c.word_count >= 50 && c.word_count <= 120) ++in_range;
  }
  stats.mean_words =
      static_cast<double>(total_words) / static_cast<double>(stats.count);
  stats.fraction_50_120 =
      static_cast<double>(in_range) / static_cast<double>(stats.count);
  return stats;
}

std::vector<Caption> captions_from_journal(
    std::span<const StageOutcome> records) {
  std::vector<Caption> out;
  for (const StageOutcome& r : records) {
    if (r.stage != Stage::Caption || r.verdict != Verdict::Pass) continue;
    Caption c;
    c.clip_id = r.clip_id;
    auto text = r.detail.find("text");
    if (text != r.detail.end()) c.text = text->second;
    c.word_count = word_count(c.text);
    out.push_back(std::move(c));
  }
  return out;
}

ThroughputReport throughput_report(std::span<const StageOutcome> records,
                                   const std::vector<Stage>& stage_order) {
  ThroughputReport report;
  for (Stage stage : stage_order) {
    StageRow row;
    row.stage = stage;
    for (const StageOutcome& r : records) {
      if (r.stage != stage) continue;
      ++row.processed;
      switch (r.verdict) {
        case Verdict::Pass: ++row.passed; break;
        case Verdict::Fail: ++row.failed; break;
        case Verdict::Split: ++row.split; break;
      }
      row.wall_total += r.wall_time;
    }
    row.pass_rate = pass_rate(records, stage);
    report.rows.push_back(row);
  }

  StageTimings timings;
  for (const StageRow& row : report.rows) {
    if (row.stage == Stage::Caption) continue;
    if (row.processed > 0 && row.wall_total > 0.0)
      timings.times.emplace_back(to_string(row.stage), row.wall_total);
  }
  if (!timings.times.empty())
    report.pipeline_efficiency = efficiency(timings);

  report.captions = caption_stats(captions_from_journal(records));
  return report;
}

namespace {

std::string format_rate(const std::optional<double>& rate) {
  if (!rate) return "N/A";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *rate);
  return buf;
}

}  // namespace

std::string render_text(const ThroughputReport& report) {
  std::ostringstream out;
  out << "stage      processed   pass   fail  split  pass_rate%   wall_s\n";
  char line[160];
  for (const StageRow& row : report.rows) {
    std::snprintf(line, sizeof line, "%-10s %9lld %6lld %6lld %6lld %10s %8.3f\n",
                  to_string(row.stage).c_str(),
                  static_cast<long long>(row.processed),
                  static_cast<long long>(row.passed),
                  static_cast<long long>(row.failed),
                  static_cast<long long>(row.split),
                  format_rate(row.pass_rate).c_str(), row.wall_total);
    out << line;
  }
  if (report.pipeline_efficiency) {
    const auto& e = *report.pipeline_efficiency;
    std::snprintf(line, sizeof line,
                  "efficiency: sequential %.3f s, pipelined %.3f s (bottleneck "
                  "%s), speedup %.3f\n",
                  e.t_sequential, e.t_pipelined, e.bottleneck_stage.c_str(),
                  e.efficiency);
    out << line;
  }
  if (report.captions.count > 0) {
    std::snprintf(line, sizeof line,
                  "captions: %lld, mean %.2f words, %.1f%% within 50-120\n",
                  static_cast<long long>(report.captions.count),
                  *report.captions.mean_words,
                  100.0 * *report.captions.fraction_50_120);
    out << line;
  } else {
    out << "captions: 0, mean N/A\n";
  }
  return out.str();
}

std::string render_json(const ThroughputReport& report) {
  json j;
  json rows = json::array();
  for (const StageRow& row : report.rows) {
    json r;
    r["stage"] = to_string(row.stage);
    r["processed"] = row.processed;
    r["pass"] = row.passed;
    r["fail"] = row.failed;
    r["split"] = row.split;
    if (row.pass_rate)
      r["pass_rate"] = *row.pass_rate;
    else
      r["pass_rate"] = nullptr;
    r["wall_s"] = row.wall_total;
    rows.push_back(std::move(r));
  }
  j["stages"] = std::move(rows);
  if (report.pipeline_efficiency) {
    const auto& e = *report.pipeline_efficiency;
    j["efficiency"] = {{"t_sequential", e.t_sequential},
                       {"t_pipelined", e.t_pipelined},
                       {"efficiency", e.efficiency},
                       {"bottleneck_stage", e.bottleneck_stage}};
  }
  json captions;
  captions["count"] = report.captions.count;
  if (report.captions.mean_words)
    captions["mean_words"] = *report.captions.mean_words;
  if (report.captions.fraction_50_120)
    captions["fraction_50_120"] = *report.captions.fraction_50_120;
  json histogram = json::object();
  for (const auto& [bucket, n] : report.captions.histogram)
    histogram[std::to_string(bucket)] = n;
  captions["histogram"] = std::move(histogram);
  j["captions"] = std::move(captions);
  return j.dump(2);
}

}  // namespace vidpipe
