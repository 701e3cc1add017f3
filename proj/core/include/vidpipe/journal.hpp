#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vidpipe/model.hpp"

namespace vidpipe {

/// Durable append-only record of per-clip, per-stage outcomes; the
/// idempotency anchor for at-least-once processing. At most one effective
/// outcome per (clip_id, stage): later appends for an existing key are
/// no-ops. File-backed journals persist as line-delimited JSON; a corrupt
/// trailing partial line is ignored on resume. Appends are serialized.
class Journal {
 public:
  /// Opens (or creates) a file-backed journal and loads existing records.
  static Journal open(const std::string& path);
  /// Volatile journal for simulations and tests.
  static Journal in_memory();

  Journal(Journal&&) noexcept;
  Journal& operator=(Journal&&) noexcept;
  ~Journal();

  /// Returns true when the record became the effective outcome, false
  /// when (clip_id, stage) was already present.
  bool append(const StageOutcome& outcome);

  std::optional<StageOutcome> find(const std::string& clip_id,
                                   Stage stage) const;
  bool contains(const std::string& clip_id, Stage stage) const;

  /// Effective outcomes in append order.
  std::vector<StageOutcome> all() const;
  std::size_t size() const;

  /// Invoked after each effective append, while the record is already
  /// durable. A throwing observer aborts the caller, not the journal.
  void set_observer(std::function<void(const StageOutcome&, std::size_t)> fn);

  const std::string& path() const;

 private:
  Journal();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Serialization used for journal lines; exposed for report tooling.
std::string outcome_to_json_line(const StageOutcome& outcome);
StageOutcome outcome_from_json_line(const std::string& line);

}  // namespace vidpipe
