#include "vidpipe/routing.hpp"

#include "vidpipe/errors.hpp"

namespace vidpipe {

RoutingTable::RoutingTable(const std::vector<Stage>& stage_order)
    : order_(stage_order) {
  if (order_.empty()) throw ConfigError("empty stage order");
  for (size_t i = 0; i < order_.size(); ++i) {
    for (size_t j = i + 1; j < order_.size(); ++j) {
      if (order_[i] == order_[j])
        throw ConfigError("stage order repeats " + to_string(order_[i]));
    }
  }
}

std::optional<Stage> RoutingTable::next(Stage stage) const {
  for (size_t i = 0; i + 1 < order_.size(); ++i) {
    if (order_[i] == stage) return order_[i + 1];
  }
  return std::nullopt;
}

std::optional<std::string> RoutingTable::advance_id(
    const StageOutcome& outcome) {
  switch (outcome.verdict) {
    case Verdict::Pass:
      return outcome.clip_id;
    case Verdict::Split: {
      auto it = outcome.detail.find("replacement");
      if (it == outcome.detail.end())
        throw Error("split outcome without replacement detail");
      return it->second;
    }
    case Verdict::Fail:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace vidpipe
