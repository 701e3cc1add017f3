#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"

namespace vidpipe {

struct Caption {
  std::string clip_id;
  std::string text;
  std::int64_t word_count = 0;
};

struct CaptionRequest {
  std::string clip_id;
  std::array<std::int64_t, 4> frame_refs{};  // clip-local keyframe indices
  std::vector<Frame> frames;                 // the 4 sampled keyframes
  std::string prompt;
};

/// The captioning prompt sent with every request.
std::string default_prompt();

/// Number of maximal whitespace-separated runs.
std::int64_t word_count(const std::string& text);

/// Adapter boundary for the captioning service.
class CaptionClient {
 public:
  virtual ~CaptionClient() = default;
  /// Throws TransportError (retryable) on connection failure and
  /// PermanentError on a malformed or empty response.
  virtual Caption request_caption(const CaptionRequest& request) = 0;
};

/// POSTs /caption to `endpoint` ("host:port") with a JSON body
/// {clip_id, frames: [4 base64 RVID frame payloads], prompt} and expects
/// {"text": ...} back.
class HttpCaptionClient final : public CaptionClient {
 public:
  explicit HttpCaptionClient(std::string endpoint, int timeout_seconds = 10);
  Caption request_caption(const CaptionRequest& request) override;

 private:
  std::string host_;
  int port_;
  int timeout_seconds_;
};

}  // namespace vidpipe
