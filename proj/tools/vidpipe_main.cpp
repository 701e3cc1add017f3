// vidpipe: queue-orchestrated curation pipeline for raw video corpora.
//
// Subcommands: synth (fixture generation), ingest (queue asset ids),
// run (drain the pipeline), simulate (pipelining throughput model),
// report (journal analytics).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vidpipe/analytics.hpp"
#include "vidpipe/asset_store.hpp"
#include "vidpipe/caption_server.hpp"
#include "vidpipe/config_io.hpp"
#include "vidpipe/errors.hpp"
#include "vidpipe/journal.hpp"
#include "vidpipe/pipeline.hpp"
#include "vidpipe/simulate.hpp"
#include "vidpipe/synth.hpp"

namespace fs = std::filesystem;
using namespace vidpipe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GlobalArgs {
  std::string config_path;
  std::string journal_path = "journal.jsonl";
  bool deterministic = false;
  std::string stage_order_csv;
  std::vector<std::string> worker_specs;
  std::string format = "text";
  std::string assets_dir;
};

void add_common_options(CLI::App* cmd, GlobalArgs& args, bool with_run_opts) {
  cmd->add_option("--config", args.config_path, "JSON settings file")
      ->envname("VIDPIPE_CONFIG");
  cmd->add_option("--journal", args.journal_path, "journal file path")
      ->envname("VIDPIPE_JOURNAL");
  cmd->add_option("--format", args.format, "report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->envname("VIDPIPE_FORMAT");
  if (with_run_opts) {
    cmd->add_flag("--deterministic", args.deterministic,
                  "single ordered worker; frozen timestamps, wall times and "
                  "worker ids for byte-reproducible journals")
        ->envname("VIDPIPE_DETERMINISTIC");
    cmd->add_option("--stage-order", args.stage_order_csv,
                    "comma-separated stage order override")
        ->envname("VIDPIPE_STAGE_ORDER");
    cmd->add_option("--workers", args.worker_specs,
                    "per-stage worker counts, stage=N")
        ->delimiter(',')
        ->envname("VIDPIPE_WORKERS");
    cmd->add_option("--assets-dir", args.assets_dir,
                    "directory of RVID assets")
        ->envname("VIDPIPE_ASSETS_DIR");
  }
}

RunSettings resolve_settings(const GlobalArgs& args) {
  RunSettings settings;
  if (!args.config_path.empty()) settings = load_settings(args.config_path);
  if (!args.stage_order_csv.empty())
    settings.pipeline.stage_order = parse_stage_order(args.stage_order_csv);
  for (const std::string& spec : args.worker_specs) {
    auto [stage, n] = parse_worker_spec(spec);
    settings.pipeline.worker_count[stage] = n;
  }
  if (!args.assets_dir.empty()) settings.assets_dir = args.assets_dir;
  settings.validate();
  return settings;
}

std::string backlog_path(const std::string& journal_path) {
  return journal_path + ".queue";
}

std::vector<std::string> read_backlog(const std::string& journal_path) {
  std::vector<std::string> ids;
  std::ifstream in(backlog_path(journal_path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

// Converts non-RVID files in `dir` through the configured decode command.
void run_decode_hook(const std::string& dir, const std::string& decode_command) {
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() == ".rvid")
      continue;
    fs::path output = entry.path();
    output.replace_extension(".rvid");
    if (fs::exists(output)) continue;
    std::string cmd = decode_command;
    auto substitute = [&cmd](const std::string& key, const std::string& value) {
      size_t pos;
      while ((pos = cmd.find(key)) != std::string::npos)
        cmd.replace(pos, key.size(), value);
    };
    substitute("{input}", entry.path().string());
    substitute("{output}", output.string());
    if (std::system(cmd.c_str()) != 0)
      throw IoError("decode command failed: " + cmd);
  }
}

int cmd_ingest(const GlobalArgs& args, const std::vector<std::string>& targets) {
  RunSettings settings = resolve_settings(args);
  std::vector<std::string> ids;
  for (const std::string& target : targets) {
    if (fs::is_directory(target)) {
      if (!settings.decode_command.empty())
        run_decode_hook(target, settings.decode_command);
      AssetStore store(target);
      auto scanned = store.scan();
      ids.insert(ids.end(), scanned.begin(), scanned.end());
    } else if (fs::exists(target)) {
      throw ConfigError("ingest target must be a directory or an asset id: " +
                        target);
    } else {
      ids.push_back(target);  // explicit id
    }
  }
  std::ofstream out(backlog_path(args.journal_path), std::ios::app);
  if (!out) throw IoError("cannot open backlog: " +
                          backlog_path(args.journal_path));
  for (const std::string& id : ids) out << id << '\n';
  out.flush();
  std::cout << "published " << ids.size() << "\n";
  return kExitOk;
}

int cmd_run(const GlobalArgs& args) {
  RunSettings settings = resolve_settings(args);

  std::set<std::string> id_set;
  if (!settings.assets_dir.empty()) {
    AssetStore scanner(settings.assets_dir);
    for (auto& id : scanner.scan()) id_set.insert(id);
  }
  for (auto& id : read_backlog(args.journal_path)) id_set.insert(id);
  std::vector<std::string> asset_ids(id_set.begin(), id_set.end());

  AssetStore store(settings.assets_dir);
  ReferenceFeatureExtractor features;
  std::unique_ptr<AestheticScorer> scorer;
  if (settings.aesthetic_scorer == "fixed")
    scorer = std::make_unique<FixedAestheticScorer>(
        settings.aesthetic_fixed_score);
  else
    scorer = std::make_unique<ReferenceAestheticScorer>();
  std::unique_ptr<TextDetector> text;
  if (settings.text_detector == "command")
    text = std::make_unique<CommandTextDetector>(settings.text_detector_command);
  else if (!settings.sidecar_path.empty())
    text = std::make_unique<SidecarTextDetector>(settings.sidecar_path);
  else
    text = std::make_unique<SidecarTextDetector>();

  std::unique_ptr<MockCaptionServer> mock_server;
  std::string endpoint = settings.caption_endpoint;
  if (endpoint.empty()) {
    mock_server = std::make_unique<MockCaptionServer>(settings.caption_words);
    endpoint = mock_server->endpoint();
  }
  HttpCaptionClient captions(endpoint);

  Journal journal = Journal::open(args.journal_path);
  StageContext ctx;
  ctx.config = &settings.pipeline;
  ctx.store = &store;
  ctx.journal = &journal;
  ctx.features = &features;
  ctx.aesthetic = scorer.get();
  ctx.text = text.get();
  ctx.captions = &captions;

  PipelineRunner runner(settings.pipeline, ctx, {args.deterministic});
  runner.enqueue_assets(asset_ids);
  bool drained = runner.run_to_drain();

  auto records = journal.all();
  ThroughputReport report =
      throughput_report(records, settings.pipeline.stage_order);
  if (args.format == "structured")
    std::cout << render_json(report) << "\n";
  else
    std::cout << render_text(report);
  return drained ? kExitOk : kExitRuntime;
}

int cmd_simulate(const GlobalArgs& args, const std::string& latencies_csv,
                 int tasks, double unit_ms) {
  std::vector<double> values;
  size_t pos = 0;
  while (pos <= latencies_csv.size() && !latencies_csv.empty()) {
    size_t comma = latencies_csv.find(',', pos);
    if (comma == std::string::npos) comma = latencies_csv.size();
    std::string item = latencies_csv.substr(pos, comma - pos);
    if (!item.empty()) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError("bad latency value: " + item);
      }
    }
    pos = comma + 1;
  }
  if (values.empty()) throw ConfigError("no latencies given");
  if (tasks < 1) throw ConfigError("tasks must be >= 1");
  if (unit_ms <= 0.0) throw ConfigError("unit-ms must be > 0");

  std::vector<SimStage> stages;
  for (size_t i = 0; i < values.size(); ++i) {
    SimStage s;
    s.name = i < kAllStages.size() ? to_string(kAllStages[i])
                                   : "stage" + std::to_string(i + 1);
    s.latency_ms = values[i] * unit_ms;
    stages.push_back(std::move(s));
  }
  SimReport report = simulate_pipeline(stages, tasks);

  if (args.format == "structured") {
    nlohmann::json j;
    j["tasks"] = report.tasks;
    j["analytic"] = {{"t_sequential", report.analytic.t_sequential},
                     {"t_pipelined", report.analytic.t_pipelined},
                     {"efficiency", report.analytic.efficiency},
                     {"bottleneck_stage", report.analytic.bottleneck_stage}};
    j["measured"] = {{"sequential_s", report.sequential_s},
                     {"pipelined_s", report.pipelined_s},
                     {"ratio", report.measured_ratio}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("analytic:  sequential %.3f, pipelined %.3f (bottleneck %s), "
                "efficiency %.4f\n",
                report.analytic.t_sequential, report.analytic.t_pipelined,
                report.analytic.bottleneck_stage.c_str(),
                report.analytic.efficiency);
    std::printf("measured:  sequential %.3f s, pipelined %.3f s, ratio %.4f "
                "(%d tasks)\n",
                report.sequential_s, report.pipelined_s, report.measured_ratio,
                report.tasks);
  }
  return kExitOk;
}

int cmd_report(const GlobalArgs& args) {
  if (!fs::exists(args.journal_path))
    throw ConfigError("journal not found: " + args.journal_path);
  Journal journal = Journal::open(args.journal_path);
  RunSettings settings = resolve_settings(args);
  auto records = journal.all();
  ThroughputReport report =
      throughput_report(records, settings.pipeline.stage_order);
  if (args.format == "structured")
    std::cout << render_json(report) << "\n";
  else
    std::cout << render_text(report);
  return kExitOk;
}

struct SynthArgs {
  std::string out;
  std::int64_t width = 64;
  std::int64_t height = 64;
  std::int64_t frames = 30;
  std::uint32_t fps_num = 30;
  std::uint32_t fps_den = 1;
  // static
  int luma = 128;
  // moving square
  std::int64_t square = 16;
  std::int64_t x0 = 0, y0 = 0, dx = 8, dy = 0;
  int fg = 255, bg = 0;
  // scenes
  std::string scenes_csv;
};

std::vector<ScenePart> parse_scenes(const std::string& csv) {
  std::vector<ScenePart> scenes;
  size_t pos = 0;
  while (pos <= csv.size() && !csv.empty()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    std::string item = csv.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("scene spec must be luma:frames, got " + item);
    ScenePart part;
    try {
      part.luma = static_cast<std::uint8_t>(std::stoi(item.substr(0, colon)));
      part.frames = std::stoll(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("scene spec must be luma:frames, got " + item);
    }
    scenes.push_back(part);
  }
  return scenes;
}

int cmd_synth(const std::string& kind, const SynthArgs& sa) {
  std::vector<Frame> frames;
  if (kind == "static") {
    StaticParams p;
    p.width = sa.width;
    p.height = sa.height;
    p.frames = sa.frames;
    p.luma = static_cast<std::uint8_t>(sa.luma);
    frames = synth_static(p);
  } else if (kind == "moving_square") {
    MovingSquareParams p;
    p.width = sa.width;
    p.height = sa.height;
    p.frames = sa.frames;
    p.square = sa.square;
    p.x0 = sa.x0;
    p.y0 = sa.y0;
    p.dx = sa.dx;
    p.dy = sa.dy;
    p.foreground = static_cast<std::uint8_t>(sa.fg);
    p.background = static_cast<std::uint8_t>(sa.bg);
    frames = synth_moving_square(p);
  } else {
    SceneSequenceParams p;
    p.width = sa.width;
    p.height = sa.height;
    p.scenes = parse_scenes(sa.scenes_csv);
    frames = synth_scene_sequence(p);
  }
  std::string asset_id = fs::path(sa.out).stem().string();
  write_synth(asset_id, sa.out, frames, sa.fps_num, sa.fps_den);
  std::cout << "wrote " << sa.out << " (" << frames.size() << " frames)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vidpipe: distributed-style video curation pipeline "
               "(clipping, dedup, aesthetic/OCR gates, motion re-clipping, "
               "captioning)"};
  app.require_subcommand(1);

  GlobalArgs args;

  auto* ingest = app.add_subcommand(
      "ingest", "queue asset ids (directories are scanned for RVID files)");
  std::vector<std::string> ingest_targets;
  ingest->add_option("targets", ingest_targets, "directories or asset ids")
      ->required();
  add_common_options(ingest, args, false);
  ingest->add_option("--assets-dir", args.assets_dir,
                     "directory of RVID assets")
      ->envname("VIDPIPE_ASSETS_DIR");

  auto* run = app.add_subcommand("run", "drain the pipeline over the queued "
                                        "and scanned assets");
  add_common_options(run, args, true);

  auto* simulate = app.add_subcommand(
      "simulate", "measure pipelined vs sequential makespan with sleep-based "
                  "stage handlers");
  std::string latencies_csv = "1,3,0.8,1.2,12";
  int sim_tasks = 1000;
  double unit_ms = 1.0;
  simulate->add_option("--latencies", latencies_csv,
                       "per-stage latencies, comma separated");
  simulate->add_option("--tasks", sim_tasks, "batch size");
  simulate->add_option("--unit-ms", unit_ms,
                       "milliseconds per latency unit");
  add_common_options(simulate, args, false);

  auto* report = app.add_subcommand("report", "analytics over a journal");
  add_common_options(report, args, false);
  report->add_option("--stage-order", args.stage_order_csv,
                     "stage order for the table")
      ->envname("VIDPIPE_STAGE_ORDER");

  auto* synth = app.add_subcommand("synth", "generate synthetic RVID fixtures");
  SynthArgs sa;
  std::string synth_kind;
  for (const char* kind : {"static", "moving_square", "scene_sequence"}) {
    auto* sub = synth->add_subcommand(kind);
    sub->add_option("--out", sa.out, "output RVID path")->required();
    sub->add_option("--width", sa.width);
    sub->add_option("--height", sa.height);
    sub->add_option("--fps-num", sa.fps_num);
    sub->add_option("--fps-den", sa.fps_den);
    if (std::string(kind) == "static") {
      sub->add_option("--frames", sa.frames);
      sub->add_option("--luma", sa.luma);
    } else if (std::string(kind) == "moving_square") {
      sub->add_option("--frames", sa.frames);
      sub->add_option("--square", sa.square);
      sub->add_option("--x0", sa.x0);
      sub->add_option("--y0", sa.y0);
      sub->add_option("--dx", sa.dx);
      sub->add_option("--dy", sa.dy);
      sub->add_option("--fg", sa.fg);
      sub->add_option("--bg", sa.bg);
    } else {
      sub->add_option("--scenes", sa.scenes_csv,
                      "luma:frames pairs, comma separated")
          ->required();
    }
    sub->callback([kind, &synth_kind] { synth_kind = kind; });
  }
  synth->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(args, ingest_targets);
    if (run->parsed()) return cmd_run(args);
    if (simulate->parsed())
      return cmd_simulate(args, latencies_csv, sim_tasks, unit_ms);
    if (report->parsed()) return cmd_report(args);
    if (synth->parsed()) return cmd_synth(synth_kind, sa);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
