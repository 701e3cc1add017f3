#include "oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace vidpipe::oracle {

BinaryMask mask_of(const Frame& a, const Frame& b, int pix_diff_threshold) {
  BinaryMask out(a.width, a.height);
  for (std::int64_t y = 0; y < a.height; ++y) {
    for (std::int64_t x = 0; x < a.width; ++x) {
      int diff = std::abs(static_cast<int>(a.at(x, y)) -
                          static_cast<int>(b.at(x, y)));
      out.at(x, y) = diff > pix_diff_threshold ? 1 : 0;
    }
  }
  return out;
}

namespace {

std::uint8_t clamped(const BinaryMask& m, std::int64_t x, std::int64_t y) {
  if (x < 0) x = 0;
  if (y < 0) y = 0;
  if (x >= m.width) x = m.width - 1;
  if (y >= m.height) y = m.height - 1;
  return m.at(x, y);
}

}  // namespace

BinaryMask erode3x3(const BinaryMask& in) {
  BinaryMask out(in.width, in.height);
  for (std::int64_t y = 0; y < in.height; ++y) {
    for (std::int64_t x = 0; x < in.width; ++x) {
      std::uint8_t v = 1;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (clamped(in, x + dx, y + dy) == 0) v = 0;
      out.at(x, y) = v;
    }
  }
  return out;
}

BinaryMask dilate3x3(const BinaryMask& in) {
  BinaryMask out(in.width, in.height);
  for (std::int64_t y = 0; y < in.height; ++y) {
    for (std::int64_t x = 0; x < in.width; ++x) {
      std::uint8_t v = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (clamped(in, x + dx, y + dy) == 1) v = 1;
      out.at(x, y) = v;
    }
  }
  return out;
}

BinaryMask refine(const BinaryMask& in) {
  return erode3x3(dilate3x3(dilate3x3(erode3x3(in))));
}

double score_of(const BinaryMask& mask) {
  std::int64_t ones = 0;
  for (std::int64_t y = 0; y < mask.height; ++y)
    for (std::int64_t x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) ++ones;
  return static_cast<double>(ones) /
         static_cast<double>(mask.width * mask.height);
}

MotionProfile motion_profile(const std::string& clip_id,
                             const std::vector<Frame>& frames,
                             int pix_diff_threshold) {
  if (frames.size() < 2) throw std::invalid_argument("too few frames");
  MotionProfile profile;
  profile.clip_id = clip_id;
  for (size_t k = 0; k + 1 < frames.size(); ++k) {
    profile.scores.push_back(
        score_of(refine(mask_of(frames[k], frames[k + 1], pix_diff_threshold))));
  }
  double sum = 0.0;
  for (double s : profile.scores) sum += s;
  profile.average = sum / static_cast<double>(profile.scores.size());
  return profile;
}

namespace {

std::optional<std::int64_t> spike_in(const std::vector<double>& scores,
                                     std::int64_t lo, std::int64_t hi,
                                     double peak, double jump) {
  // scores of window [lo, hi) are indices lo .. hi-2
  std::int64_t n = hi - 1 - lo;
  if (n < 3) return std::nullopt;
  std::int64_t best = lo;
  for (std::int64_t i = lo; i < hi - 1; ++i)
    if (scores[i] > scores[best]) best = i;
  double left = best - 1 >= lo ? scores[best - 1] : 0.0;
  double right = best + 1 <= hi - 2 ? scores[best + 1] : 0.0;
  if (scores[best] > peak && scores[best] - left > jump &&
      scores[best] - right > jump)
    return best;
  return std::nullopt;
}

}  // namespace

ReclipOutcome reclip(const std::vector<double>& scores,
                     std::int64_t clip_length, double static_threshold,
                     double peak_threshold, double jump_threshold,
                     std::int64_t min_clip_frames) {
  ReclipOutcome out;
  double sum = 0.0;
  for (double s : scores) sum += s;
  double average = sum / static_cast<double>(scores.size());
  if (average < static_threshold) {
    out.action = ReclipOutcome::Action::Drop;
    out.reason = "static";
    return out;
  }

  std::int64_t lo = 0, hi = clip_length;
  while (true) {
    auto spike =
        spike_in(scores, lo, hi, peak_threshold, jump_threshold);
    if (!spike) break;
    std::int64_t cut = *spike + 1;
    std::int64_t left_len = cut - lo;
    std::int64_t right_len = hi - cut;
    if (left_len >= right_len)
      hi = cut;
    else
      lo = cut;
    if (hi - lo < min_clip_frames) {
      out.action = ReclipOutcome::Action::Drop;
      out.reason = "reclip_too_short";
      return out;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.action = (lo == 0 && hi == clip_length) ? ReclipOutcome::Action::Keep
                                              : ReclipOutcome::Action::Split;
  return out;
}

std::vector<std::string> dedup_kept(const std::vector<Clip>& clips,
                                    const std::vector<FeatureVector>& features,
                                    double tau) {
  return dedup_full(clips, features, tau).kept;
}

DedupOutcome dedup_full(const std::vector<Clip>& clips,
                        const std::vector<FeatureVector>& features,
                        double tau) {
  const size_t n = clips.size();
  // full similarity matrix
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double dot = 0.0, ni = 0.0, nj = 0.0;
      for (size_t d = 0; d < features[i].values.size(); ++d) {
        dot += features[i].values[d] * features[j].values[d];
        ni += features[i].values[d] * features[i].values[d];
        nj += features[j].values[d] * features[j].values[d];
      }
      sim[i][j] = dot / (std::sqrt(ni) * std::sqrt(nj));
    }
  }
  // explicit greedy walk in (length desc, id asc) order
  std::vector<size_t> order;
  std::vector<bool> used(n, false);
  for (size_t step = 0; step < n; ++step) {
    size_t best = n;
    for (size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (best == n) { best = i; continue; }
      if (clips[i].length() > clips[best].length() ||
          (clips[i].length() == clips[best].length() &&
           clips[i].clip_id < clips[best].clip_id))
        best = i;
    }
    used[best] = true;
    order.push_back(best);
  }
  DedupOutcome outcome;
  std::vector<size_t> kept;
  for (size_t i : order) {
    bool duplicate = false;
    for (size_t k : kept) {
      if (sim[i][k] >= tau) {
        outcome.removed.push_back({clips[i].clip_id, clips[k].clip_id, sim[i][k]});
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      kept.push_back(i);
      outcome.kept.push_back(clips[i].clip_id);
    }
  }
  return outcome;
}

std::vector<std::int64_t> cuts(const std::vector<Frame>& gray_frames,
                               double cut_threshold,
                               std::int64_t min_clip_frames) {
  std::vector<std::int64_t> kept;
  std::int64_t last = 0;
  for (size_t k = 0; k + 1 < gray_frames.size(); ++k) {
    const Frame& a = gray_frames[k];
    const Frame& b = gray_frames[k + 1];
    std::uint64_t total = 0;
    for (std::int64_t y = 0; y < a.height; ++y)
      for (std::int64_t x = 0; x < a.width; ++x)
        total += static_cast<std::uint64_t>(
            std::abs(static_cast<int>(a.at(x, y)) - static_cast<int>(b.at(x, y))));
    double diff = static_cast<double>(total) /
                  (255.0 * static_cast<double>(a.width * a.height));
    if (diff > cut_threshold) {
      std::int64_t cut = static_cast<std::int64_t>(k) + 1;
      if (cut - last >= min_clip_frames) {
        kept.push_back(cut);
        last = cut;
      }
    }
  }
  return kept;
}

std::vector<std::pair<std::int64_t, std::int64_t>> partition(
    std::int64_t frame_count, const std::vector<std::int64_t>& cut_points,
    std::int64_t min_clip_frames) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t start = 0;
  for (std::int64_t c : cut_points) {
    if (c - start >= min_clip_frames) out.emplace_back(start, c);
    start = c;
  }
  if (frame_count - start >= min_clip_frames)
    out.emplace_back(start, frame_count);
  return out;
}

double aesthetic(const std::vector<Frame>& keyframes) {
  double total = 0.0;
  for (const Frame& frame : keyframes) {
    const std::int64_t n = frame.width * frame.height;
    double sum = 0.0, sum_sq = 0.0, spread = 0.0;
    for (std::int64_t y = 0; y < frame.height; ++y) {
      for (std::int64_t x = 0; x < frame.width; ++x) {
        double luma;
        if (frame.channels == 3) {
          int r = frame.at(x, y, 0), g = frame.at(x, y, 1), b = frame.at(x, y, 2);
          luma = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
          spread += std::max({r, g, b}) - std::min({r, g, b});
        } else {
          luma = frame.at(x, y);
        }
        sum += luma;
        sum_sq += luma * luma;
      }
    }
    double mean = sum / static_cast<double>(n);
    double variance = sum_sq / static_cast<double>(n) - mean * mean;
    double brightness = mean / 255.0;
    double contrast = std::sqrt(std::max(variance, 0.0)) / 255.0;
    double saturation = spread / (255.0 * static_cast<double>(n));
    double raw = 0.5 * std::min(contrast / 0.25, 1.0) +
                 0.3 * (1.0 - 2.0 * std::abs(brightness - 0.5)) +
                 0.2 * std::min(saturation / 0.5, 1.0);
    raw = std::min(std::max(raw, 0.0), 1.0);
    total += 10.0 * raw;
  }
  double mean = total / static_cast<double>(keyframes.size());
  return std::round(mean * 10000.0) / 10000.0;
}

FeatureVector feature(const std::vector<Frame>& frames) {
  const std::int64_t count = static_cast<std::int64_t>(frames.size());
  std::vector<double> grid(64, 0.0);
  for (int i = 0; i < 4; ++i) {
    std::int64_t idx = std::llround(static_cast<double>(i) * (count - 1) / 3.0);
    const Frame& src = frames[static_cast<size_t>(idx)];
    const std::int64_t w = src.width, h = src.height;
    for (int gy = 0; gy < 8; ++gy) {
      std::int64_t y0 = gy * h / 8, y1 = (gy + 1) * h / 8;
      if (y1 == y0) { y0 = std::min<std::int64_t>(y0, h - 1); y1 = y0 + 1; }
      for (int gx = 0; gx < 8; ++gx) {
        std::int64_t x0 = gx * w / 8, x1 = (gx + 1) * w / 8;
        if (x1 == x0) { x0 = std::min<std::int64_t>(x0, w - 1); x1 = x0 + 1; }
        std::uint64_t sum = 0;
        for (std::int64_t y = y0; y < y1; ++y) {
          for (std::int64_t x = x0; x < x1; ++x) {
            if (src.channels == 3) {
              long luma = std::lround(0.299 * src.at(x, y, 0) +
                                      0.587 * src.at(x, y, 1) +
                                      0.114 * src.at(x, y, 2));
              sum += static_cast<std::uint64_t>(luma);
            } else {
              sum += src.at(x, y);
            }
          }
        }
        grid[gy * 8 + gx] += static_cast<double>(sum) /
                             static_cast<double>((y1 - y0) * (x1 - x0));
      }
    }
  }
  for (double& v : grid) v /= 4.0;
  double norm_sq = 0.0;
  for (double v : grid) norm_sq += v * v;
  FeatureVector out;
  if (norm_sq == 0.0) {
    out.values.assign(64, 0.0);
    out.values[0] = 1.0;
    return out;
  }
  double norm = std::sqrt(norm_sq);
  for (double v : grid) out.values.push_back(v / norm);
  return out;
}

}  // namespace vidpipe::oracle
