#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vidpipe/model.hpp"

namespace vidpipe {

/// Per-stage downstream wiring derived from the configured stage order.
/// Only pass verdicts advance; a split advances its replacement clip id
/// to the same downstream. Queue names equal stage names.
class RoutingTable {
 public:
  explicit RoutingTable(const std::vector<Stage>& stage_order);

  std::optional<Stage> next(Stage stage) const;
  const std::vector<Stage>& order() const { return order_; }
  Stage first() const { return order_.front(); }

  /// Id to forward downstream for an outcome, or nullopt when the clip
  /// stops here.
  static std::optional<std::string> advance_id(const StageOutcome& outcome);

 private:
  std::vector<Stage> order_;
};

}  // namespace vidpipe
