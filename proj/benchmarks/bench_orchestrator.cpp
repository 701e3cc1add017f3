#include <benchmark/benchmark.h>

#include <atomic>
#include <thread>
#include <vector>

#include "support/temp_dir.hpp"
#include "vidpipe/broker.hpp"
#include "vidpipe/journal.hpp"

using namespace vidpipe;

namespace {

Task task_of(int i) {
  Task t;
  t.task_id = next_task_id();
  t.id = "clip:" + std::to_string(i) + "-" + std::to_string(i + 30);
  return t;
}

void BM_BrokerPublishConsume(benchmark::State& state) {
  const int batch = static_cast<int>(state.range(0));
  for (auto _ : state) {
    InProcessBroker broker;
    auto consumer = broker.consume("q", 16);
    std::stop_source stop;
    for (int i = 0; i < batch; ++i) broker.publish("q", task_of(i));
    for (int i = 0; i < batch; ++i) {
      auto d = consumer->next(stop.get_token());
      consumer->ack(*d);
    }
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_BrokerPublishConsume)->Arg(1000)->Arg(10000);

void BM_BrokerContended(benchmark::State& state) {
  const int batch = 2000;
  for (auto _ : state) {
    InProcessBroker broker;
    std::vector<std::jthread> consumers;
    std::atomic<int> handled{0};
    for (int c = 0; c < 4; ++c) {
      consumers.emplace_back([&](std::stop_token stop) {
        auto consumer = broker.consume("q", 4);
        while (auto d = consumer->next(stop)) {
          consumer->ack(*d);
          if (handled.fetch_add(1) + 1 == batch) return;
        }
      });
    }
    for (int i = 0; i < batch; ++i) broker.publish("q", task_of(i));
    while (handled.load() < batch) std::this_thread::yield();
    for (auto& t : consumers) t.request_stop();
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_BrokerContended);

void BM_JournalAppend(benchmark::State& state) {
  const int batch = static_cast<int>(state.range(0));
  int run = 0;
  for (auto _ : state) {
    vidpipe::testing::TempDir tmp("bench-journal");
    Journal journal = Journal::open(tmp.str("j.jsonl"));
    for (int i = 0; i < batch; ++i) {
      StageOutcome o;
      o.clip_id = "c" + std::to_string(run) + "-" + std::to_string(i);
      o.stage = Stage::Motion;
      o.verdict = Verdict::Pass;
      o.score = 0.0625;
      journal.append(o);
    }
    ++run;
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_JournalAppend)->Arg(1000);

void BM_JournalReload(benchmark::State& state) {
  vidpipe::testing::TempDir tmp("bench-journal-reload");
  {
    Journal journal = Journal::open(tmp.str("j.jsonl"));
    for (int i = 0; i < 5000; ++i) {
      StageOutcome o;
      o.clip_id = "c" + std::to_string(i);
      o.stage = Stage::Dedup;
      o.verdict = i % 3 ? Verdict::Pass : Verdict::Fail;
      journal.append(o);
    }
  }
  for (auto _ : state) {
    Journal journal = Journal::open(tmp.str("j.jsonl"));
    benchmark::DoNotOptimize(journal.size());
  }
  state.SetItemsProcessed(state.iterations() * 5000);
}
BENCHMARK(BM_JournalReload);

}  // namespace

BENCHMARK_MAIN();
