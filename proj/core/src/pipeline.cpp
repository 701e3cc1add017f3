#include "vidpipe/pipeline.hpp"

#include <chrono>

#include "vidpipe/errors.hpp"

namespace vidpipe {

namespace {

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

PipelineRunner::PipelineRunner(const PipelineConfig& config, StageContext ctx,
                               RunnerOptions options)
    : config_(config), ctx_(ctx), options_(options),
      routing_(config.stage_order) {
  config_.validate();
  for (Stage stage : config_.stage_order) {
    broker_.declare(to_string(stage));
    logic_[stage] = make_stage_logic(stage);
  }
}

PipelineRunner::~PipelineRunner() {
  stop_.request_stop();
  std::lock_guard lock(workers_mutex_);
  workers_.clear();  // joins
}

std::size_t PipelineRunner::enqueue_assets(
    std::span<const std::string> asset_ids) {
  Stage first = routing_.first();
  for (const std::string& id : asset_ids) {
    Task task;
    task.task_id = next_task_id();
    task.id = id;
    task.target_stage = first;
    broker_.publish(to_string(first), std::move(task));
  }
  return asset_ids.size();
}

void PipelineRunner::process_task(const Task& task,
                                  const std::string& worker_id) {
  Stage stage = task.target_stage;
  const StageLogic& logic = *logic_.at(stage);

  std::vector<StageOutcome> effective;
  auto existing = logic.journaled(ctx_, task);
  if (existing) {
    effective = std::move(*existing);
  } else {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<StageOutcome> records = logic.execute(ctx_, task);
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    double share = records.empty()
                       ? 0.0
                       : wall / static_cast<double>(records.size());
    for (StageOutcome& r : records) {
      if (!options_.deterministic) {
        r.wall_time = share;
        r.worker_id = worker_id;
        r.timestamp = now_ns();
      } else {
        r.wall_time = 0.0;
        r.worker_id = "w0";
        r.timestamp = 0;
      }
      if (!ctx_.journal->append(r)) {
        // first record wins; republish from the effective one
        auto prior = ctx_.journal->find(r.clip_id, r.stage);
        if (prior) r = std::move(*prior);
      }
      effective.push_back(std::move(r));
    }
  }

  auto next = routing_.next(stage);
  if (!next) return;
  for (const StageOutcome& r : effective) {
    if (r.stage != stage) continue;
    auto id = RoutingTable::advance_id(r);
    if (!id) continue;
    Task downstream;
    downstream.task_id = next_task_id();
    downstream.id = *id;
    downstream.target_stage = *next;
    broker_.publish(to_string(*next), std::move(downstream));
  }
}

void PipelineRunner::worker_loop(Stage stage, std::string worker_id,
                                 std::stop_token stop) {
  auto consumer =
      broker_.consume(to_string(stage), config_.prefetch_for(stage));
  while (!stop.stop_requested()) {
    auto delivery = consumer->next(stop);
    if (!delivery) break;
    try {
      process_task(delivery->task, worker_id);
      consumer->ack(*delivery);
    } catch (const CrashInjected&) {
      stop_.request_stop();  // take every worker down, nothing acked
      break;
    } catch (const PermanentError& e) {
      StageOutcome fail;
      fail.clip_id = delivery->task.id;
      fail.stage = stage;
      fail.verdict = Verdict::Fail;
      fail.detail["error"] = e.what();
      fail.worker_id = options_.deterministic ? "w0" : worker_id;
      fail.timestamp = options_.deterministic ? 0 : now_ns();
      try {
        ctx_.journal->append(fail);
      } catch (const CrashInjected&) {
        stop_.request_stop();
        break;
      }
      consumer->ack(*delivery);
    } catch (const std::exception& e) {
      if (delivery->task.attempt >= config_.max_attempts) {
        StageOutcome fail;
        fail.clip_id = delivery->task.id;
        fail.stage = stage;
        fail.verdict = Verdict::Fail;
        fail.detail["error"] = e.what();
        fail.detail["attempts"] = std::to_string(delivery->task.attempt);
        fail.worker_id = options_.deterministic ? "w0" : worker_id;
        fail.timestamp = options_.deterministic ? 0 : now_ns();
        try {
          ctx_.journal->append(fail);
        } catch (const CrashInjected&) {
          stop_.request_stop();
          break;
        }
        consumer->ack(*delivery);
      } else {
        consumer->nack(*delivery);
      }
    }
  }
}

void PipelineRunner::run_deterministic() {
  // Single worker draining queues in stage order; a full pass with no
  // work left ends the run. Routing is acyclic, so this terminates.
  auto consumer_for = [&](Stage stage) {
    return broker_.consume(to_string(stage), 1);
  };
  bool progressed = true;
  while (progressed && !stop_.stop_requested()) {
    progressed = false;
    for (Stage stage : config_.stage_order) {
      if (stop_.stop_requested()) return;
      auto consumer = consumer_for(stage);
      while (broker_.ready(to_string(stage)) > 0 && !stop_.stop_requested()) {
        auto delivery = consumer->next(stop_.get_token());
        if (!delivery) break;
        progressed = true;
        try {
          process_task(delivery->task, "w0");
          consumer->ack(*delivery);
        } catch (const CrashInjected&) {
          stop_.request_stop();
          return;
        } catch (const PermanentError& e) {
          StageOutcome fail;
          fail.clip_id = delivery->task.id;
          fail.stage = stage;
          fail.verdict = Verdict::Fail;
          fail.detail["error"] = e.what();
          fail.worker_id = "w0";
          try {
            ctx_.journal->append(fail);
          } catch (const CrashInjected&) {
            stop_.request_stop();
            return;
          }
          consumer->ack(*delivery);
        } catch (const std::exception& e) {
          if (delivery->task.attempt >= config_.max_attempts) {
            StageOutcome fail;
            fail.clip_id = delivery->task.id;
            fail.stage = stage;
            fail.verdict = Verdict::Fail;
            fail.detail["error"] = e.what();
            fail.detail["attempts"] = std::to_string(delivery->task.attempt);
            fail.worker_id = "w0";
            try {
              ctx_.journal->append(fail);
            } catch (const CrashInjected&) {
              stop_.request_stop();
              return;
            }
            consumer->ack(*delivery);
          } else {
            consumer->nack(*delivery);
          }
        }
      }
    }
  }
}

bool PipelineRunner::run_to_drain() {
  if (options_.deterministic) {
    run_deterministic();
    return !stop_.stop_requested() && broker_.quiescent();
  }

  for (Stage stage : config_.stage_order)
    scale_stage(stage, config_.workers_for(stage));

  bool drained = broker_.wait_quiescent(stop_.get_token());

  {
    std::lock_guard lock(workers_mutex_);
    for (auto& [stage, threads] : workers_) {
      for (auto& t : threads) t.request_stop();
    }
    workers_.clear();  // joins
  }
  return drained && !stop_.stop_requested();
}

void PipelineRunner::scale_stage(Stage stage, int workers) {
  if (workers < 0) throw ConfigError("worker count must be >= 0");
  std::lock_guard lock(workers_mutex_);
  auto& pool = workers_[stage];
  while (static_cast<int>(pool.size()) > workers) {
    pool.back().request_stop();
    pool.pop_back();  // joins; consumer dtor requeues unacked work
  }
  while (static_cast<int>(pool.size()) < workers) {
    int ordinal = spawned_[stage]++;
    std::string worker_id = to_string(stage) + "/w" + std::to_string(ordinal);
    pool.emplace_back([this, stage, worker_id](std::stop_token stop) {
      worker_loop(stage, worker_id, stop);
    });
  }
}

int PipelineRunner::worker_count(Stage stage) const {
  std::lock_guard lock(workers_mutex_);
  auto it = workers_.find(stage);
  return it == workers_.end() ? 0 : static_cast<int>(it->second.size());
}

}  // namespace vidpipe
