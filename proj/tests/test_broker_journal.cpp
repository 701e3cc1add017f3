#include <atomic>
#include <fstream>
#include <set>
#include <thread>

#include "doctest.h"
#include "support/temp_dir.hpp"
#include "vidpipe/base64.hpp"
#include "vidpipe/broker.hpp"
#include "vidpipe/errors.hpp"
#include "vidpipe/journal.hpp"

using namespace vidpipe;
using vidpipe::testing::TempDir;

namespace {

Task task_of(const std::string& id, Stage stage = Stage::Clip) {
  Task t;
  t.task_id = next_task_id();
  t.id = id;
  t.target_stage = stage;
  return t;
}

StageOutcome outcome_of(const std::string& clip_id, Stage stage,
                        Verdict verdict) {
  StageOutcome o;
  o.clip_id = clip_id;
  o.stage = stage;
  o.verdict = verdict;
  return o;
}

}  // namespace

TEST_CASE("published tasks are delivered and acks retire them") {
  InProcessBroker broker;
  broker.declare("q");
  broker.publish("q", task_of("a"));
  broker.publish("q", task_of("b"));
  CHECK(broker.ready("q") == 2);

  auto consumer = broker.consume("q", 1);
  std::stop_source stop;
  auto d1 = consumer->next(stop.get_token());
  REQUIRE(d1.has_value());
  CHECK(d1->task.id == "a");
  CHECK(d1->task.attempt == 1);
  consumer->ack(*d1);
  auto d2 = consumer->next(stop.get_token());
  REQUIRE(d2.has_value());
  CHECK(d2->task.id == "b");
  consumer->ack(*d2);
  CHECK(broker.quiescent());
  CHECK_THROWS_AS(consumer->ack(*d2), BrokerError);
}

TEST_CASE("nack requeues with an incremented attempt") {
  InProcessBroker broker;
  broker.publish("q", task_of("a"));
  auto consumer = broker.consume("q", 1);
  std::stop_source stop;
  auto d = consumer->next(stop.get_token());
  REQUIRE(d.has_value());
  consumer->nack(*d);
  auto again = consumer->next(stop.get_token());
  REQUIRE(again.has_value());
  CHECK(again->task.id == "a");
  CHECK(again->task.attempt == 2);
  CHECK(again->task.task_id == d->task.task_id);  // same publication
  consumer->ack(*again);
}

TEST_CASE("prefetch limits outstanding deliveries") {
  InProcessBroker broker;
  for (int i = 0; i < 4; ++i) broker.publish("q", task_of("t"));
  auto consumer = broker.consume("q", 2);
  std::stop_source stop;
  auto d1 = consumer->next(stop.get_token());
  auto d2 = consumer->next(stop.get_token());
  REQUIRE(d1.has_value());
  REQUIRE(d2.has_value());

  std::atomic<bool> got_third = false;
  std::thread blocked([&] {
    auto d3 = consumer->next(stop.get_token());
    got_third = d3.has_value();
    if (d3) consumer->ack(*d3);
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  CHECK_FALSE(got_third.load());  // window full
  consumer->ack(*d1);
  blocked.join();
  CHECK(got_third.load());
  consumer->ack(*d2);
}

TEST_CASE("closing a consumer redelivers its unacked tasks") {
  InProcessBroker broker;
  broker.publish("q", task_of("a"));
  broker.publish("q", task_of("b"));
  {
    auto consumer = broker.consume("q", 8);
    std::stop_source stop;
    auto d1 = consumer->next(stop.get_token());
    auto d2 = consumer->next(stop.get_token());
    REQUIRE(d1.has_value());
    REQUIRE(d2.has_value());
    CHECK(broker.ready("q") == 0);
    // dropped without ack
  }
  CHECK(broker.ready("q") == 2);
  CHECK_FALSE(broker.quiescent());
}

TEST_CASE("concurrent producers and consumers lose nothing") {
  InProcessBroker broker;
  constexpr int kTasks = 500;
  std::atomic<int> handled = 0;
  std::vector<std::jthread> consumers;
  std::set<std::string> seen;
  std::mutex seen_mutex;
  for (int c = 0; c < 4; ++c) {
    consumers.emplace_back([&](std::stop_token stop) {
      auto consumer = broker.consume("q", 1);
      while (auto d = consumer->next(stop)) {
        {
          std::lock_guard lock(seen_mutex);
          seen.insert(d->task.id);
        }
        consumer->ack(*d);
        handled.fetch_add(1);
      }
    });
  }
  std::vector<std::jthread> producers;
  for (int p = 0; p < 2; ++p) {
    producers.emplace_back([&broker, p] {
      for (int i = 0; i < kTasks / 2; ++i)
        broker.publish("q", task_of("p" + std::to_string(p) + "-" +
                                    std::to_string(i)));
    });
  }
  producers.clear();
  while (!broker.quiescent())
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  consumers.clear();
  CHECK(handled.load() == kTasks);
  CHECK(seen.size() == kTasks);
}

TEST_CASE("journal appends are first-wins per (clip, stage)") {
  Journal journal = Journal::in_memory();
  CHECK(journal.append(outcome_of("c1", Stage::Dedup, Verdict::Pass)));
  CHECK_FALSE(journal.append(outcome_of("c1", Stage::Dedup, Verdict::Fail)));
  CHECK(journal.append(outcome_of("c1", Stage::Aesthetic, Verdict::Fail)));
  CHECK(journal.size() == 2);
  auto found = journal.find("c1", Stage::Dedup);
  REQUIRE(found.has_value());
  CHECK(found->verdict == Verdict::Pass);
  CHECK_FALSE(journal.find("c2", Stage::Dedup).has_value());
}

TEST_CASE("journal records survive reopen") {
  TempDir tmp;
  std::string path = tmp.str("j.jsonl");
  {
    Journal journal = Journal::open(path);
    StageOutcome o = outcome_of("c1", Stage::Motion, Verdict::Split);
    o.score = 0.0625;
    o.detail["replacement"] = "c1b";
    o.wall_time = 0.25;
    o.worker_id = "motion/w0";
    o.timestamp = 12345;
    journal.append(o);
    journal.append(outcome_of("c2", Stage::Clip, Verdict::Pass));
  }
  Journal reopened = Journal::open(path);
  CHECK(reopened.size() == 2);
  auto o = reopened.find("c1", Stage::Motion);
  REQUIRE(o.has_value());
  CHECK(o->verdict == Verdict::Split);
  CHECK(o->score == 0.0625);
  CHECK(o->detail.at("replacement") == "c1b");
  CHECK(o->wall_time == 0.25);
  CHECK(o->timestamp == 12345);
}

TEST_CASE("a corrupt trailing partial line is ignored on resume") {
  TempDir tmp;
  std::string path = tmp.str("j.jsonl");
  {
    Journal journal = Journal::open(path);
    journal.append(outcome_of("c1", Stage::Clip, Verdict::Pass));
  }
  {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    out << "{\"clip_id\": \"c2\", \"stage\"";  // crashed mid-write
  }
  Journal reopened = Journal::open(path);
  CHECK(reopened.size() == 1);
  CHECK(reopened.contains("c1", Stage::Clip));
  // appends continue on a fresh line boundary? No: append-only semantics
  // keep the bytes; the partial line stays ignored while new keys land.
  reopened.append(outcome_of("c3", Stage::Clip, Verdict::Pass));
  CHECK(reopened.size() == 2);
}

TEST_CASE("a corrupt interior line is a format error") {
  TempDir tmp;
  std::string path = tmp.str("j.jsonl");
  {
    std::ofstream out(path, std::ios::binary);
    out << "garbage\n";
    out << outcome_to_json_line(outcome_of("c1", Stage::Clip, Verdict::Pass))
        << "\n";
  }
  CHECK_THROWS_AS(Journal::open(path), FormatError);
}

TEST_CASE("concurrent appends serialize cleanly") {
  TempDir tmp;
  Journal journal = Journal::open(tmp.str("j.jsonl"));
  std::vector<std::jthread> writers;
  for (int w = 0; w < 4; ++w) {
    writers.emplace_back([&journal, w] {
      for (int i = 0; i < 100; ++i) {
        journal.append(outcome_of("w" + std::to_string(w) + "-" +
                                      std::to_string(i),
                                  Stage::Clip, Verdict::Pass));
      }
    });
  }
  writers.clear();
  CHECK(journal.size() == 400);
  Journal reopened = Journal::open(tmp.str("j.jsonl"));
  CHECK(reopened.size() == 400);
}

TEST_CASE("outcome JSON lines round-trip") {
  StageOutcome o = outcome_of("clip:0-10", Stage::Ocr, Verdict::Fail);
  o.detail["max_box_area"] = "20000";
  o.wall_time = 0.125;
  o.worker_id = "ocr/w1";
  o.timestamp = 987654321;
  StageOutcome back = outcome_from_json_line(outcome_to_json_line(o));
  CHECK(back.clip_id == o.clip_id);
  CHECK(back.stage == o.stage);
  CHECK(back.verdict == o.verdict);
  CHECK_FALSE(back.score.has_value());
  CHECK(back.detail == o.detail);
  CHECK(back.wall_time == o.wall_time);
  CHECK(back.worker_id == o.worker_id);
  CHECK(back.timestamp == o.timestamp);
}

TEST_CASE("base64 round-trips binary payloads") {
  std::vector<std::uint8_t> data;
  for (int i = 0; i < 300; ++i) data.push_back(static_cast<std::uint8_t>(i));
  for (size_t len : {size_t{0}, size_t{1}, size_t{2}, size_t{3}, size_t{299}}) {
    std::vector<std::uint8_t> slice(data.begin(), data.begin() + len);
    CHECK(base64_decode(base64_encode(slice)) == slice);
  }
  CHECK(base64_encode(std::vector<std::uint8_t>{'M', 'a', 'n'}) == "TWFu");
  CHECK_THROWS_AS(base64_decode("abc"), FormatError);
  CHECK_THROWS_AS(base64_decode("a=bc"), FormatError);
  CHECK_THROWS_AS(base64_decode("ab!c"), FormatError);
}
