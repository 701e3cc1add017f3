#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>

#include "vidpipe/model.hpp"

namespace vidpipe {

struct Delivery {
  Task task;
  std::uint64_t tag = 0;
};

/// One subscription to a queue. next() blocks while the queue is empty or
/// the prefetch window is full. Unacknowledged deliveries return to the
/// queue when the consumer is destroyed.
class Consumer {
 public:
  virtual ~Consumer() = default;
  virtual std::optional<Delivery> next(std::stop_token stop) = 0;
  virtual void ack(const Delivery& delivery) = 0;
  /// Requeues the task with its attempt count incremented.
  virtual void nack(const Delivery& delivery) = 0;
};

/// Message broker contract: declared named queues, at-least-once delivery,
/// redelivery of unacknowledged tasks after consumer failure, terminal
/// acknowledgement.
class Broker {
 public:
  virtual ~Broker() = default;
  virtual void declare(const std::string& queue) = 0;
  virtual void publish(const std::string& queue, Task task) = 0;
  virtual std::unique_ptr<Consumer> consume(const std::string& queue,
                                            int prefetch) = 0;
  /// Tasks waiting in a queue (excluding in-flight deliveries).
  virtual std::size_t ready(const std::string& queue) const = 0;
  /// True when every queue is empty and nothing is in flight.
  virtual bool quiescent() const = 0;
  /// Blocks until quiescent() or stop; returns quiescent().
  virtual bool wait_quiescent(std::stop_token stop) = 0;
};

/// Reference broker: in-process queues guarded by one mutex. Safe for
/// concurrent producers and consumers.
class InProcessBroker final : public Broker {
 public:
  InProcessBroker() = default;

  void declare(const std::string& queue) override;
  void publish(const std::string& queue, Task task) override;
  std::unique_ptr<Consumer> consume(const std::string& queue,
                                    int prefetch) override;
  std::size_t ready(const std::string& queue) const override;
  bool quiescent() const override;
  bool wait_quiescent(std::stop_token stop) override;

  std::uint64_t published_total() const;

 private:
  class QueueConsumer;
  friend class QueueConsumer;

  struct QueueState {
    std::deque<Task> ready;
  };

  mutable std::mutex mutex_;
  std::condition_variable_any cv_;
  std::map<std::string, QueueState> queues_;
  std::size_t in_flight_ = 0;
  std::uint64_t published_ = 0;
  std::uint64_t next_tag_ = 1;
};

/// Globally unique task id for a new publication.
std::string next_task_id();

}  // namespace vidpipe
