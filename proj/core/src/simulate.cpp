#include "vidpipe/simulate.hpp"

#include <chrono>
#include <thread>

#include "vidpipe/broker.hpp"
#include "vidpipe/errors.hpp"

namespace vidpipe {

namespace {

using Clock = std::chrono::steady_clock;

// sleep_for undershoots badly at sub-millisecond scale; finish the last
// stretch spinning so per-task latency stays faithful.
void spin_sleep(Clock::duration d) {
  const auto deadline = Clock::now() + d;
  const auto coarse = deadline - std::chrono::microseconds(150);
  if (coarse > Clock::now()) std::this_thread::sleep_until(coarse);
  while (Clock::now() < deadline) {
  }
}

Clock::duration latency_of(const SimStage& stage) {
  return std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double, std::milli>(stage.latency_ms));
}

void enqueue_tasks(InProcessBroker& broker, const std::string& queue,
                   int tasks) {
  for (int i = 0; i < tasks; ++i) {
    Task task;
    task.task_id = next_task_id();
    task.id = "sim" + std::to_string(i);
    broker.publish(queue, std::move(task));
  }
}

// Consumes `queue` until `count` tasks are handled, sleeping per task and
// forwarding to `next_queue` when given.
void run_sim_worker(InProcessBroker& broker, const std::string& queue,
                    Clock::duration latency, const std::string& next_queue,
                    int count, std::stop_token stop) {
  auto consumer = broker.consume(queue, 1);
  for (int handled = 0; handled < count && !stop.stop_requested();) {
    auto delivery = consumer->next(stop);
    if (!delivery) break;
    spin_sleep(latency);
    if (!next_queue.empty()) {
      Task forward;
      forward.task_id = next_task_id();
      forward.id = delivery->task.id;
      broker.publish(next_queue, std::move(forward));
    }
    consumer->ack(*delivery);
    ++handled;
  }
}

}  // namespace

SimReport simulate_pipeline(const std::vector<SimStage>& stages, int tasks) {
  if (stages.empty()) throw InvalidRangeError("simulate needs >= 1 stage");
  if (tasks < 1) throw InvalidRangeError("simulate needs >= 1 task");
  for (const SimStage& s : stages) {
    if (s.latency_ms <= 0.0)
      throw InvalidRangeError("non-positive latency for " + s.name);
  }

  SimReport report;
  report.tasks = tasks;
  StageTimings timings;
  for (const SimStage& s : stages) timings.times.emplace_back(s.name, s.latency_ms);
  report.analytic = efficiency(timings);

  std::stop_source stop;

  {  // sequential: each stage finishes its whole batch before the next
    InProcessBroker broker;
    for (const SimStage& s : stages) broker.declare(s.name);
    auto t0 = Clock::now();
    enqueue_tasks(broker, stages.front().name, tasks);
    for (size_t i = 0; i < stages.size(); ++i) {
      const std::string next =
          i + 1 < stages.size() ? stages[i + 1].name : std::string{};
      run_sim_worker(broker, stages[i].name, latency_of(stages[i]), next,
                     tasks, stop.get_token());
    }
    report.sequential_s =
        std::chrono::duration<double>(Clock::now() - t0).count();
  }

  {  // pipelined: one worker per stage, all running at once
    InProcessBroker broker;
    for (const SimStage& s : stages) broker.declare(s.name);
    auto t0 = Clock::now();
    std::vector<std::jthread> workers;
    for (size_t i = 0; i < stages.size(); ++i) {
      const std::string queue = stages[i].name;
      const std::string next =
          i + 1 < stages.size() ? stages[i + 1].name : std::string{};
      const auto latency = latency_of(stages[i]);
      workers.emplace_back([&broker, queue, latency, next, tasks,
                            token = stop.get_token()] {
        run_sim_worker(broker, queue, latency, next, tasks, token);
      });
    }
    enqueue_tasks(broker, stages.front().name, tasks);
    workers.clear();  // join: each worker exits after `tasks` handled
    report.pipelined_s =
        std::chrono::duration<double>(Clock::now() - t0).count();
  }

  report.measured_ratio = report.sequential_s / report.pipelined_s;
  return report;
}

}  // namespace vidpipe
