#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "vidpipe/broker.hpp"
#include "vidpipe/routing.hpp"
#include "vidpipe/stages.hpp"

namespace vidpipe {

/// Thrown by test hooks (journal observers) to simulate a process crash:
/// the record is already durable but the worker dies before publishing
/// downstream or acknowledging.
struct CrashInjected {};

struct RunnerOptions {
  /// Single in-order worker, frozen wall_time/worker_id/timestamp fields;
  /// journal contents become byte-reproducible.
  bool deterministic = false;
};

/// Queue-backed stage-worker runtime: per-stage queues named after the
/// stages, conditional downstream triggering, independent scaling, and
/// at-least-once delivery made effectively exactly-once by the journal
/// (journal append happens before publish, publish before acknowledge).
class PipelineRunner {
 public:
  PipelineRunner(const PipelineConfig& config, StageContext ctx,
                 RunnerOptions options = {});
  ~PipelineRunner();

  PipelineRunner(const PipelineRunner&) = delete;
  PipelineRunner& operator=(const PipelineRunner&) = delete;

  /// One task per asset id into the first-stage queue.
  std::size_t enqueue_assets(std::span<const std::string> asset_ids);

  /// Runs workers until every queue is drained (or a crash/stop fires).
  /// Returns true on a clean drain.
  bool run_to_drain();

  /// Adjusts the live worker pool of one stage; in-flight tasks of removed
  /// workers are redelivered. Callable while run_to_drain is blocked.
  void scale_stage(Stage stage, int workers);
  int worker_count(Stage stage) const;

  /// Requesting stop on this source simulates killing all workers.
  std::stop_source& stop_source() { return stop_; }

  InProcessBroker& broker() { return broker_; }
  const RoutingTable& routing() const { return routing_; }

  /// Processes one delivered task: skip-and-republish when the journal
  /// already covers it, otherwise execute, journal, publish, in that
  /// order. Exposed for the worker loop and tests.
  void process_task(const Task& task, const std::string& worker_id);

 private:
  void worker_loop(Stage stage, std::string worker_id, std::stop_token stop);
  void run_deterministic();

  PipelineConfig config_;
  StageContext ctx_;
  RunnerOptions options_;
  RoutingTable routing_;
  InProcessBroker broker_;
  std::map<Stage, std::unique_ptr<StageLogic>> logic_;
  std::stop_source stop_;

  mutable std::mutex workers_mutex_;
  std::map<Stage, std::vector<std::jthread>> workers_;
  std::map<Stage, int> spawned_;
};

}  // namespace vidpipe
