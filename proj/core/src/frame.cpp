#include "vidpipe/frame.hpp"

#include <algorithm>
#include <cmath>

#include "vidpipe/errors.hpp"

namespace vidpipe {

Frame to_grayscale(const Frame& frame) {
  if (frame.channels == 1) return frame;
  if (frame.channels != 3)
    throw DimensionError("to_grayscale expects 1 or 3 channels");
  Frame out(frame.width, frame.height, 1);
  const std::uint8_t* src = frame.pixels.data();
  std::uint8_t* dst = out.pixels.data();
  const std::int64_t n = frame.pixel_count();
  for (std::int64_t i = 0; i < n; ++i) {
    double luma = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] +
                  0.114 * src[3 * i + 2];
    long v = std::lround(luma);
    dst[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
  }
  return out;
}

}  // namespace vidpipe
