#include "vidpipe/broker.hpp"

#include <atomic>

#include "vidpipe/errors.hpp"

namespace vidpipe {

class InProcessBroker::QueueConsumer final : public Consumer {
 public:
  QueueConsumer(InProcessBroker& broker, std::string queue, int prefetch)
      : broker_(broker), queue_(std::move(queue)), prefetch_(prefetch) {}

  ~QueueConsumer() override {
    std::lock_guard lock(broker_.mutex_);
    auto& q = broker_.queues_[queue_];
    // unacked deliveries go back for redelivery
    for (auto& [tag, task] : unacked_) {
      q.ready.push_front(std::move(task));
      --broker_.in_flight_;
    }
    unacked_.clear();
    broker_.cv_.notify_all();
  }

  std::optional<Delivery> next(std::stop_token stop) override {
    std::unique_lock lock(broker_.mutex_);
    auto& q = broker_.queues_[queue_];
    broker_.cv_.wait(lock, stop, [&] {
      return !q.ready.empty() &&
             unacked_.size() < static_cast<size_t>(prefetch_);
    });
    if (stop.stop_requested() || q.ready.empty() ||
        unacked_.size() >= static_cast<size_t>(prefetch_))
      return std::nullopt;  // stopped
    Delivery d;
    d.task = std::move(q.ready.front());
    q.ready.pop_front();
    d.tag = broker_.next_tag_++;
    unacked_.emplace(d.tag, d.task);
    ++broker_.in_flight_;
    return d;
  }

  void ack(const Delivery& delivery) override {
    std::lock_guard lock(broker_.mutex_);
    if (unacked_.erase(delivery.tag) == 0)
      throw BrokerError("ack of unknown delivery tag");
    --broker_.in_flight_;
    broker_.cv_.notify_all();
  }

  void nack(const Delivery& delivery) override {
    std::lock_guard lock(broker_.mutex_);
    auto it = unacked_.find(delivery.tag);
    if (it == unacked_.end())
      throw BrokerError("nack of unknown delivery tag");
    Task task = std::move(it->second);
    unacked_.erase(it);
    --broker_.in_flight_;
    task.attempt += 1;
    broker_.queues_[queue_].ready.push_back(std::move(task));
    broker_.cv_.notify_all();
  }

 private:
  InProcessBroker& broker_;
  std::string queue_;
  int prefetch_;
  std::map<std::uint64_t, Task> unacked_;
};

void InProcessBroker::declare(const std::string& queue) {
  std::lock_guard lock(mutex_);
  queues_.try_emplace(queue);
}

void InProcessBroker::publish(const std::string& queue, Task task) {
  std::lock_guard lock(mutex_);
  queues_[queue].ready.push_back(std::move(task));
  ++published_;
  cv_.notify_all();
}

std::unique_ptr<Consumer> InProcessBroker::consume(const std::string& queue,
                                                   int prefetch) {
  if (prefetch < 1) throw BrokerError("prefetch must be >= 1");
  {
    std::lock_guard lock(mutex_);
    queues_.try_emplace(queue);
  }
  return std::make_unique<QueueConsumer>(*this, queue, prefetch);
}

std::size_t InProcessBroker::ready(const std::string& queue) const {
  std::lock_guard lock(mutex_);
  auto it = queues_.find(queue);
  return it == queues_.end() ? 0 : it->second.ready.size();
}

bool InProcessBroker::quiescent() const {
  std::lock_guard lock(mutex_);
  if (in_flight_ > 0) return false;
  for (const auto& [name, q] : queues_) {
    if (!q.ready.empty()) return false;
  }
  return true;
}

bool InProcessBroker::wait_quiescent(std::stop_token stop) {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, stop, [&] {
    if (in_flight_ > 0) return false;
    for (const auto& [name, q] : queues_) {
      if (!q.ready.empty()) return false;
    }
    return true;
  });
  if (in_flight_ > 0) return false;
  for (const auto& [name, q] : queues_) {
    if (!q.ready.empty()) return false;
  }
  return true;
}

std::uint64_t InProcessBroker::published_total() const {
  std::lock_guard lock(mutex_);
  return published_;
}

std::string next_task_id() {
  static std::atomic<std::uint64_t> counter{0};
  return "t" + std::to_string(counter.fetch_add(1, std::memory_order_relaxed));
}

}  // namespace vidpipe
