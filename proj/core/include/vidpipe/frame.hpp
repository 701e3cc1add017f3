#pragma once

#include <cstdint>
#include <vector>

namespace vidpipe {

/// One video frame, 8-bit per channel, row-major, channel-interleaved.
struct Frame {
  std::int64_t width = 0;
  std::int64_t height = 0;
  int channels = 1;  // 1 (grayscale) or 3 (RGB)
  std::vector<std::uint8_t> pixels;

  Frame() = default;
  Frame(std::int64_t w, std::int64_t h, int ch, std::uint8_t fill = 0)
      : width(w), height(h), channels(ch),
        pixels(static_cast<size_t>(w) * h * ch, fill) {}

  std::uint8_t& at(std::int64_t x, std::int64_t y, int c = 0) {
    return pixels[static_cast<size_t>((y * width + x) * channels + c)];
  }
  std::uint8_t at(std::int64_t x, std::int64_t y, int c = 0) const {
    return pixels[static_cast<size_t>((y * width + x) * channels + c)];
  }
  std::int64_t pixel_count() const { return width * height; }

  bool operator==(const Frame&) const = default;
};

/// Rec.601 luma, rounded: round(0.299 R + 0.587 G + 0.114 B).
/// Identity copy for frames that are already single-channel.
Frame to_grayscale(const Frame& frame);

}  // namespace vidpipe
