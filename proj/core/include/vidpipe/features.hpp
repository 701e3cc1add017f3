#pragma once

#include <span>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"

namespace vidpipe {

/// Fixed-dimension embedding of a clip used for similarity dedup.
struct FeatureVector {
  std::vector<double> values;

  size_t dim() const { return values.size(); }
};

/// Adapter boundary for the embedding backend. Implementations must be
/// deterministic: identical frames yield identical vectors.
class FeatureExtractor {
 public:
  virtual ~FeatureExtractor() = default;
  virtual std::string name() const = 0;
  virtual size_t dim() const = 0;
  virtual FeatureVector extract(std::span<const Frame> clip_frames) const = 0;
};

/// Deterministic stand-in for a learned extractor: samples the 4 uniform
/// keyframes, block-means each grayscale frame onto an 8x8 grid, averages
/// the grids and L2-normalizes the 64 values. An all-zero grid maps to
/// the unit basis vector e_1 so cosine similarity stays defined on blank
/// clips.
class ReferenceFeatureExtractor final : public FeatureExtractor {
 public:
  static constexpr size_t kGrid = 8;

  std::string name() const override { return "reference-blockmean-64"; }
  size_t dim() const override { return kGrid * kGrid; }
  FeatureVector extract(std::span<const Frame> clip_frames) const override;
};

/// dot(a,b) / (|a| |b|). Throws on dimension mismatch or zero norm.
double cosine_similarity(const FeatureVector& a, const FeatureVector& b);

}  // namespace vidpipe
