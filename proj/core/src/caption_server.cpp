#include "vidpipe/caption_server.hpp"

#include <atomic>

#include "json.hpp"

#include "vidpipe/caption.hpp"
#include "vidpipe/errors.hpp"
#include "httplib.h"

namespace vidpipe {

using nlohmann::json;

namespace {

constexpr const char* kVocabulary[] = {
    "the",    "a",       "camera", "slowly",  "person", "scene",   "moves",
    "across", "bright",  "field",  "shows",   "small",  "street",  "while",
    "light",  "through", "city",   "water",   "with",   "towards", "group",
    "walks",  "around",  "during", "evening", "forest", "follows", "quiet",
    "distant", "object",  "frame",  "appears",
};
constexpr size_t kVocabularySize = sizeof(kVocabulary) / sizeof(kVocabulary[0]);

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

std::string deterministic_caption(const std::string& clip_id,
                                  std::int64_t words) {
  if (words < 1) throw InvalidRangeError("caption must have >= 1 word");
  std::uint64_t state = fnv1a(clip_id);
  std::string out;
  for (std::int64_t i = 0; i < words; ++i) {
    // xorshift64 keeps the stream reproducible across platforms
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    if (i > 0) out.push_back(' ');
    out += kVocabulary[state % kVocabularySize];
  }
  out.push_back('.');
  return out;
}

struct MockCaptionServer::Impl {
  httplib::Server server;
  std::atomic<std::int64_t> requests{0};
  std::int64_t caption_words;
};

MockCaptionServer::MockCaptionServer(std::int64_t caption_words, int port)
    : impl_(std::make_unique<Impl>()) {
  impl_->caption_words = caption_words;
  Impl* impl = impl_.get();
  impl->server.Post("/caption", [impl](const httplib::Request& req,
                                       httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      return;
    }
    if (!body.contains("clip_id") || !body["clip_id"].is_string() ||
        !body.contains("frames") || !body["frames"].is_array() ||
        body["frames"].size() != 4 || !body.contains("prompt") ||
        !body["prompt"].is_string()) {
      res.status = 400;
      return;
    }
    impl->requests.fetch_add(1);
    json reply;
    reply["text"] = deterministic_caption(body["clip_id"].get<std::string>(),
                                          impl->caption_words);
    res.set_content(reply.dump(), "application/json");
  });

  if (port == 0) {
    port_ = impl_->server.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw IoError("mock caption server: cannot bind");
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port))
      throw IoError("mock caption server: cannot bind port " +
                    std::to_string(port));
    port_ = port;
  }
  server_thread_ = std::thread([impl] { impl->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockCaptionServer::~MockCaptionServer() {
  impl_->server.stop();
  if (server_thread_.joinable()) server_thread_.join();
}

std::int64_t MockCaptionServer::request_count() const {
  return impl_->requests.load();
}

}  // namespace vidpipe
