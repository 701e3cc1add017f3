#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

/// RVID container header. On disk: magic "RVID", version u8 (= 1),
/// width u32 LE, height u32 LE, channels u8, fps_num u32 LE,
/// fps_den u32 LE, frame_count u32 LE. Frames follow contiguously,
/// row-major, channel-interleaved, one byte per channel.
struct VideoHeader {
  static constexpr char kMagic[4] = {'R', 'V', 'I', 'D'};
  static constexpr std::uint8_t kVersion = 1;

  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t channels = 1;
  std::uint32_t fps_num = 30;
  std::uint32_t fps_den = 1;
  std::uint32_t frame_count = 0;

  std::size_t frame_bytes() const {
    return static_cast<std::size_t>(width) * height * channels;
  }

  bool operator==(const VideoHeader&) const = default;
};

/// Writes header + frames. Every frame must match the header dimensions.
void write_video(const std::string& path, const VideoHeader& header,
                 const std::vector<Frame>& frames);

/// Random-access reader over an RVID file. Frames read by range are
/// bit-identical to an eager full read. Safe for concurrent use on
/// distinct instances.
class VideoFile {
 public:
  explicit VideoFile(const std::string& path);

  const VideoHeader& header() const { return header_; }
  const std::string& path() const { return path_; }

  Frame read_frame(std::int64_t index);
  std::vector<Frame> read_range(std::int64_t begin, std::int64_t end);
  std::vector<Frame> read_all();

 private:
  std::string path_;
  std::ifstream stream_;
  VideoHeader header_;
};

/// Eager read of the whole file.
std::pair<VideoHeader, std::vector<Frame>> read_video(const std::string& path);

/// Header-only probe (also validates payload length).
VideoHeader read_header(const std::string& path);

/// VideoAsset view of an RVID file on disk.
VideoAsset asset_from_file(const std::string& asset_id,
                           const std::string& path);

}  // namespace vidpipe
