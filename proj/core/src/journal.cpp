#include "vidpipe/journal.hpp"

#include <fstream>

#include "json.hpp"

#include "vidpipe/errors.hpp"

namespace vidpipe {

using nlohmann::json;

std::string outcome_to_json_line(const StageOutcome& outcome) {
  json j;
  j["clip_id"] = outcome.clip_id;
  j["stage"] = to_string(outcome.stage);
  j["verdict"] = to_string(outcome.verdict);
  if (outcome.score) j["score"] = *outcome.score;
  j["detail"] = outcome.detail;
  j["wall_time"] = outcome.wall_time;
  j["worker_id"] = outcome.worker_id;
  j["timestamp"] = outcome.timestamp;
  return j.dump();
}

StageOutcome outcome_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("journal line is not JSON: ") + e.what());
  }
  try {
    StageOutcome out;
    out.clip_id = j.at("clip_id").get<std::string>();
    out.stage = stage_from_string(j.at("stage").get<std::string>());
    out.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (j.contains("score") && !j["score"].is_null())
      out.score = j["score"].get<double>();
    if (j.contains("detail"))
      out.detail = j["detail"].get<std::map<std::string, std::string>>();
    out.wall_time = j.value("wall_time", 0.0);
    out.worker_id = j.value("worker_id", "");
    out.timestamp = j.value("timestamp", std::int64_t{0});
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("journal record missing fields: ") +
                      e.what());
  }
}

struct Journal::Impl {
  mutable std::mutex mutex;
  std::string path;  // empty for in-memory
  std::ofstream file;
  std::vector<StageOutcome> records;
  std::map<std::pair<std::string, Stage>, std::size_t> index;
  std::function<void(const StageOutcome&, std::size_t)> observer;
};

Journal::Journal() : impl_(std::make_unique<Impl>()) {}
Journal::Journal(Journal&&) noexcept = default;
Journal& Journal::operator=(Journal&&) noexcept = default;
Journal::~Journal() = default;

Journal Journal::open(const std::string& path) {
  Journal journal;
  journal.impl_->path = path;

  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < content.size()) {
      auto nl = content.find('\n', pos);
      if (nl == std::string::npos) break;  // trailing partial line: ignore
      std::string line = content.substr(pos, nl - pos);
      pos = nl + 1;
      if (line.empty()) continue;
      StageOutcome outcome = outcome_from_json_line(line);
      auto key = std::make_pair(outcome.clip_id, outcome.stage);
      if (journal.impl_->index.contains(key)) continue;  // first wins
      journal.impl_->index.emplace(key, journal.impl_->records.size());
      journal.impl_->records.push_back(std::move(outcome));
    }
  }

  journal.impl_->file.open(path, std::ios::binary | std::ios::app);
  if (!journal.impl_->file)
    throw IoError("cannot open journal for append: " + path);
  return journal;
}

Journal Journal::in_memory() { return Journal(); }

bool Journal::append(const StageOutcome& outcome) {
  std::function<void(const StageOutcome&, std::size_t)> observer;
  std::size_t count = 0;
  {
    std::lock_guard lock(impl_->mutex);
    auto key = std::make_pair(outcome.clip_id, outcome.stage);
    if (impl_->index.contains(key)) return false;
    if (!impl_->path.empty()) {
      impl_->file << outcome_to_json_line(outcome) << '\n';
      impl_->file.flush();
      if (!impl_->file) throw IoError("journal write failed: " + impl_->path);
    }
    impl_->index.emplace(key, impl_->records.size());
    impl_->records.push_back(outcome);
    observer = impl_->observer;
    count = impl_->records.size();
  }
  if (observer) observer(outcome, count);
  return true;
}

std::optional<StageOutcome> Journal::find(const std::string& clip_id,
                                          Stage stage) const {
  std::lock_guard lock(impl_->mutex);
  auto it = impl_->index.find({clip_id, stage});
  if (it == impl_->index.end()) return std::nullopt;
  return impl_->records[it->second];
}

bool Journal::contains(const std::string& clip_id, Stage stage) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->index.contains({clip_id, stage});
}

std::vector<StageOutcome> Journal::all() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->records;
}

std::size_t Journal::size() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->records.size();
}

void Journal::set_observer(
    std::function<void(const StageOutcome&, std::size_t)> fn) {
  std::lock_guard lock(impl_->mutex);
  impl_->observer = std::move(fn);
}

const std::string& Journal::path() const { return impl_->path; }

}  // namespace vidpipe
