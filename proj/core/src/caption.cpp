#include "vidpipe/caption.hpp"

#include <cctype>

#include "json.hpp"

#include "vidpipe/base64.hpp"
#include "vidpipe/errors.hpp"
#include "httplib.h"

namespace vidpipe {

using nlohmann::json;

std::string default_prompt() {
  return "A chat between a curious user and an artificial intelligence "
         "assistant. \"The assistant gives helpful, detailed, and polite "
         "answers to the user's questions.\" Please provide a description "
         "of this video.";
}

std::int64_t word_count(const std::string& text) {
  std::int64_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

HttpCaptionClient::HttpCaptionClient(std::string endpoint, int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  auto colon = endpoint.rfind(':');
  if (colon == std::string::npos)
    throw ConfigError("caption endpoint must be host:port, got " + endpoint);
  host_ = endpoint.substr(0, colon);
  try {
    port_ = std::stoi(endpoint.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("caption endpoint must be host:port, got " + endpoint);
  }
}

Caption HttpCaptionClient::request_caption(const CaptionRequest& request) {
  if (request.frames.size() != 4)
    throw InvalidRangeError("caption request needs exactly 4 keyframes");

  json body;
  body["clip_id"] = request.clip_id;
  json frames = json::array();
  for (const Frame& f : request.frames)
    frames.push_back(base64_encode(f.pixels));
  body["frames"] = std::move(frames);
  body["prompt"] = request.prompt;

  httplib::Client client(host_, port_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  auto res = client.Post("/caption", body.dump(), "application/json");
  if (!res)
    throw TransportError("caption service unreachable at " + host_ + ":" +
                         std::to_string(port_));
  if (res->status != 200)
    throw PermanentError("caption service returned status " +
                         std::to_string(res->status));
  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception&) {
    throw PermanentError("caption service returned malformed JSON");
  }
  if (!reply.contains("text") || !reply["text"].is_string())
    throw PermanentError("caption response has no text field");
  Caption caption;
  caption.clip_id = request.clip_id;
  caption.text = reply["text"].get<std::string>();
  if (caption.text.empty())
    throw PermanentError("caption response text is empty");
  caption.word_count = word_count(caption.text);
  return caption;
}

}  // namespace vidpipe
