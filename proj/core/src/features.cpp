#include "vidpipe/features.hpp"

#include <cmath>

#include "vidpipe/errors.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

FeatureVector ReferenceFeatureExtractor::extract(
    std::span<const Frame> clip_frames) const {
  if (clip_frames.empty())
    throw InvalidRangeError("feature extraction needs at least one frame");
  const auto indices = keyframe_indices(
      static_cast<std::int64_t>(clip_frames.size()));

  std::vector<double> grid(kGrid * kGrid, 0.0);
  for (std::int64_t idx : indices) {
    Frame gray = to_grayscale(clip_frames[static_cast<size_t>(idx)]);
    const std::int64_t w = gray.width;
    const std::int64_t h = gray.height;
    for (size_t gy = 0; gy < kGrid; ++gy) {
      std::int64_t y0 = static_cast<std::int64_t>(gy) * h / kGrid;
      std::int64_t y1 = static_cast<std::int64_t>(gy + 1) * h / kGrid;
      if (y1 == y0) { y0 = std::min<std::int64_t>(y0, h - 1); y1 = y0 + 1; }
      for (size_t gx = 0; gx < kGrid; ++gx) {
        std::int64_t x0 = static_cast<std::int64_t>(gx) * w / kGrid;
        std::int64_t x1 = static_cast<std::int64_t>(gx + 1) * w / kGrid;
        if (x1 == x0) { x0 = std::min<std::int64_t>(x0, w - 1); x1 = x0 + 1; }
        std::uint64_t sum = 0;
        for (std::int64_t y = y0; y < y1; ++y)
          for (std::int64_t x = x0; x < x1; ++x) sum += gray.at(x, y);
        grid[gy * kGrid + gx] +=
            static_cast<double>(sum) / static_cast<double>((y1 - y0) * (x1 - x0));
      }
    }
  }
  for (double& v : grid) v /= 4.0;

  double norm_sq = 0.0;
  for (double v : grid) norm_sq += v * v;
  FeatureVector out;
  if (norm_sq == 0.0) {
    out.values.assign(kGrid * kGrid, 0.0);
    out.values[0] = 1.0;
    return out;
  }
  const double norm = std::sqrt(norm_sq);
  out.values.reserve(grid.size());
  for (double v : grid) out.values.push_back(v / norm);
  return out;
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  if (a.dim() != b.dim() || a.dim() == 0)
    throw DimensionError("cosine_similarity: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0)
    throw InvalidRangeError("cosine_similarity: zero-norm vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace vidpipe
