#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"

namespace vidpipe {

/// Axis-aligned text detection box, top-left anchored.
struct BoundingBox {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t w = 0;
  std::int64_t h = 0;

  std::int64_t area() const { return w * h; }
  bool operator==(const BoundingBox&) const = default;
};

/// Adapter boundary for aesthetic scoring; deterministic, output in [0,10].
class AestheticScorer {
 public:
  virtual ~AestheticScorer() = default;
  virtual std::string name() const = 0;
  virtual double score(std::span<const Frame> keyframes) const = 0;
};

/// Deterministic stand-in for a learned scorer. Per keyframe:
///   B = mean luma / 255
///   C = population stddev of luma / 255
///   S = mean over pixels of (max channel - min channel) / 255
///   frame = 10 * clamp(0.5 min(C/0.25, 1) + 0.3 (1 - 2|B - 0.5|)
///                      + 0.2 min(S/0.5, 1), 0, 1)
/// Clip score = mean over keyframes, rounded to 4 decimals.
class ReferenceAestheticScorer final : public AestheticScorer {
 public:
  std::string name() const override { return "reference-stats"; }
  double score(std::span<const Frame> keyframes) const override;
};

/// Mock scorer returning a fixed value.
class FixedAestheticScorer final : public AestheticScorer {
 public:
  explicit FixedAestheticScorer(double value) : value_(value) {}
  std::string name() const override { return "fixed"; }
  double score(std::span<const Frame>) const override { return value_; }

 private:
  double value_;
};

/// Identifies a keyframe for detectors that look up external annotations:
/// absolute frame index within the asset.
struct KeyframeRef {
  std::string asset_id;
  std::int64_t frame_index = 0;
};

/// Adapter boundary for text detection; deterministic, boxes within the
/// frame bounds.
class TextDetector {
 public:
  virtual ~TextDetector() = default;
  virtual std::string name() const = 0;
  virtual std::vector<BoundingBox> detect(const KeyframeRef& ref,
                                          const Frame& frame) const = 0;
};

/// Mock for an OCR engine, backed by a sidecar annotation file of
/// line-delimited records "asset_id frame_index x y w h" (space-separated
/// decimal integers). Unannotated frames yield no boxes. A box outside
/// the frame bounds is a format error.
class SidecarTextDetector final : public TextDetector {
 public:
  SidecarTextDetector() = default;
  explicit SidecarTextDetector(const std::string& sidecar_path);

  std::string name() const override { return "sidecar"; }
  std::vector<BoundingBox> detect(const KeyframeRef& ref,
                                  const Frame& frame) const override;

  void add(const std::string& asset_id, std::int64_t frame_index,
           BoundingBox box);

 private:
  std::map<std::pair<std::string, std::int64_t>, std::vector<BoundingBox>>
      boxes_;
};

/// Shells out per keyframe: the command template's {asset} and {frame}
/// placeholders are substituted, and the process must print boxes on
/// stdout, one per line, in the sidecar's 4-integer "x y w h" format.
class CommandTextDetector final : public TextDetector {
 public:
  explicit CommandTextDetector(std::string command_template)
      : template_(std::move(command_template)) {}

  std::string name() const override { return "command"; }
  std::vector<BoundingBox> detect(const KeyframeRef& ref,
                                  const Frame& frame) const override;

 private:
  std::string template_;
};

/// Fail iff score < cutoff; a score exactly at the cutoff passes.
bool aesthetic_gate(double score, double aesthetic_cutoff);

/// Pass iff every box area is strictly smaller than the limit; no boxes
/// passes.
bool ocr_gate(const std::vector<BoundingBox>& boxes,
              std::int64_t ocr_area_limit);

}  // namespace vidpipe
