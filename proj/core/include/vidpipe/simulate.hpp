#pragma once

#include <string>
#include <vector>

#include "vidpipe/analytics.hpp"

namespace vidpipe {

struct SimStage {
  std::string name;
  double latency_ms = 1.0;  // per-task handler latency
};

struct SimReport {
  EfficiencyReport analytic;     // from the given latencies
  double sequential_s = 0.0;     // measured: stages run one after another
  double pipelined_s = 0.0;      // measured: all stages running concurrently
  double measured_ratio = 0.0;   // sequential_s / pipelined_s
  int tasks = 0;
};

/// Pushes `tasks` tasks through a chain of sleep-based stage handlers with
/// no-op filters (everything advances), once stage-by-stage and once with
/// all stages consuming concurrently, one worker each. Uses the same
/// broker machinery as the real pipeline.
SimReport simulate_pipeline(const std::vector<SimStage>& stages, int tasks);

}  // namespace vidpipe
