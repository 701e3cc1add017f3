#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <thread>

namespace vidpipe {

/// Deterministic caption text: a fixed-vocabulary sentence seeded by a
/// hash of the clip id, exactly `words` words long.
std::string deterministic_caption(const std::string& clip_id,
                                  std::int64_t words);

/// In-process captioning service implementing the POST /caption contract.
/// Bound to 127.0.0.1 on an ephemeral port unless one is given.
class MockCaptionServer {
 public:
  explicit MockCaptionServer(std::int64_t caption_words = 84, int port = 0);
  ~MockCaptionServer();

  MockCaptionServer(const MockCaptionServer&) = delete;
  MockCaptionServer& operator=(const MockCaptionServer&) = delete;

  int port() const { return port_; }
  std::string endpoint() const { return "127.0.0.1:" + std::to_string(port_); }

  /// Requests served so far.
  std::int64_t request_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread server_thread_;
  int port_ = 0;
};

}  // namespace vidpipe
