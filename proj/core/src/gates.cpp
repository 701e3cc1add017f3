#include "vidpipe/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vidpipe/errors.hpp"

namespace vidpipe {

namespace {

double frame_aesthetic(const Frame& frame) {
  const Frame gray = to_grayscale(frame);
  const std::int64_t n = gray.pixel_count();
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t v = gray.pixels[static_cast<size_t>(i)];
    sum += v;
    sum_sq += v * v;
  }
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  const double var =
      static_cast<double>(sum_sq) / static_cast<double>(n) - mean * mean;
  const double brightness = mean / 255.0;
  const double contrast = std::sqrt(std::max(var, 0.0)) / 255.0;

  double saturation = 0.0;
  if (frame.channels == 3) {
    std::uint64_t spread = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      std::uint8_t r = frame.pixels[static_cast<size_t>(3 * i)];
      std::uint8_t g = frame.pixels[static_cast<size_t>(3 * i + 1)];
      std::uint8_t b = frame.pixels[static_cast<size_t>(3 * i + 2)];
      spread += std::max({r, g, b}) - std::min({r, g, b});
    }
    saturation = static_cast<double>(spread) / (255.0 * static_cast<double>(n));
  }

  double raw = 0.5 * std::min(contrast / 0.25, 1.0) +
               0.3 * (1.0 - 2.0 * std::abs(brightness - 0.5)) +
               0.2 * std::min(saturation / 0.5, 1.0);
  return 10.0 * std::clamp(raw, 0.0, 1.0);
}

}  // namespace

double ReferenceAestheticScorer::score(std::span<const Frame> keyframes) const {
  if (keyframes.empty())
    throw InvalidRangeError("aesthetic score needs at least one keyframe");
  double total = 0.0;
  for (const Frame& f : keyframes) total += frame_aesthetic(f);
  double mean = total / static_cast<double>(keyframes.size());
  return std::round(mean * 10000.0) / 10000.0;
}

SidecarTextDetector::SidecarTextDetector(const std::string& sidecar_path) {
  std::ifstream in(sidecar_path);
  if (!in) throw IoError("cannot open sidecar: " + sidecar_path);
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string asset_id;
    std::int64_t frame_index;
    BoundingBox box;
    if (!(fields >> asset_id >> frame_index >> box.x >> box.y >> box.w >>
          box.h)) {
      throw FormatError(sidecar_path + ":" + std::to_string(lineno) +
                        ": malformed sidecar record");
    }
    std::string rest;
    if (fields >> rest)
      throw FormatError(sidecar_path + ":" + std::to_string(lineno) +
                        ": trailing fields in sidecar record");
    add(asset_id, frame_index, box);
  }
}

void SidecarTextDetector::add(const std::string& asset_id,
                              std::int64_t frame_index, BoundingBox box) {
  boxes_[{asset_id, frame_index}].push_back(box);
}

std::vector<BoundingBox> SidecarTextDetector::detect(const KeyframeRef& ref,
                                                     const Frame& frame) const {
  auto it = boxes_.find({ref.asset_id, ref.frame_index});
  if (it == boxes_.end()) return {};
  for (const BoundingBox& box : it->second) {
    if (box.w < 1 || box.h < 1 || box.x < 0 || box.y < 0 ||
        box.x + box.w > frame.width || box.y + box.h > frame.height) {
      throw FormatError("sidecar box out of frame bounds for " +
                        ref.asset_id + " frame " +
                        std::to_string(ref.frame_index));
    }
  }
  return it->second;
}

std::vector<BoundingBox> CommandTextDetector::detect(const KeyframeRef& ref,
                                                     const Frame&) const {
  std::string cmd = template_;
  auto substitute = [&cmd](const std::string& key, const std::string& value) {
    size_t pos;
    while ((pos = cmd.find(key)) != std::string::npos)
      cmd.replace(pos, key.size(), value);
  };
  substitute("{asset}", ref.asset_id);
  substitute("{frame}", std::to_string(ref.frame_index));

  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw IoError("cannot run text detector: " + cmd);
  std::string output;
  char buf[512];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  if (status != 0)
    throw IoError("text detector command failed: " + cmd);

  std::vector<BoundingBox> boxes;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    BoundingBox box;
    if (!(fields >> box.x >> box.y >> box.w >> box.h))
      throw FormatError("text detector printed a malformed box: " + line);
    boxes.push_back(box);
  }
  return boxes;
}

bool aesthetic_gate(double score, double aesthetic_cutoff) {
  return !(score < aesthetic_cutoff);
}

bool ocr_gate(const std::vector<BoundingBox>& boxes,
              std::int64_t ocr_area_limit) {
  for (const BoundingBox& box : boxes) {
    if (box.area() >= ocr_area_limit) return false;
  }
  return true;
}

}  // namespace vidpipe
