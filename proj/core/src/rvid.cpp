#include "vidpipe/rvid.hpp"

#include <cstring>
#include <filesystem>

#include "vidpipe/errors.hpp"

namespace vidpipe {

namespace {

constexpr std::size_t kHeaderBytes = 4 + 1 + 4 + 4 + 1 + 4 + 4 + 4;

void put_u32le(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v);
  out[1] = static_cast<std::uint8_t>(v >> 8);
  out[2] = static_cast<std::uint8_t>(v >> 16);
  out[3] = static_cast<std::uint8_t>(v >> 24);
}

std::uint32_t get_u32le(const std::uint8_t* in) {
  return static_cast<std::uint32_t>(in[0]) |
         static_cast<std::uint32_t>(in[1]) << 8 |
         static_cast<std::uint32_t>(in[2]) << 16 |
         static_cast<std::uint32_t>(in[3]) << 24;
}

void encode_header(const VideoHeader& h, std::uint8_t out[kHeaderBytes]) {
  std::memcpy(out, VideoHeader::kMagic, 4);
  out[4] = VideoHeader::kVersion;
  put_u32le(out + 5, h.width);
  put_u32le(out + 9, h.height);
  out[13] = h.channels;
  put_u32le(out + 14, h.fps_num);
  put_u32le(out + 18, h.fps_den);
  put_u32le(out + 22, h.frame_count);
}

VideoHeader decode_header(const std::uint8_t in[kHeaderBytes],
                          const std::string& path) {
  if (std::memcmp(in, VideoHeader::kMagic, 4) != 0)
    throw FormatError(path + ": bad magic, not an RVID file");
  if (in[4] != VideoHeader::kVersion)
    throw FormatError(path + ": unsupported RVID version " +
                      std::to_string(in[4]));
  VideoHeader h;
  h.width = get_u32le(in + 5);
  h.height = get_u32le(in + 9);
  h.channels = in[13];
  h.fps_num = get_u32le(in + 14);
  h.fps_den = get_u32le(in + 18);
  h.frame_count = get_u32le(in + 22);
  if (h.width < 1 || h.height < 1)
    throw FormatError(path + ": zero frame dimensions");
  if (h.channels != 1 && h.channels != 3)
    throw FormatError(path + ": channels must be 1 or 3");
  if (h.fps_den < 1) throw FormatError(path + ": fps_den must be >= 1");
  if (h.frame_count < 1) throw FormatError(path + ": empty video");
  return h;
}

void check_payload(const VideoHeader& h, std::uintmax_t file_size,
                   const std::string& path) {
  const std::uintmax_t want =
      kHeaderBytes + static_cast<std::uintmax_t>(h.frame_bytes()) * h.frame_count;
  if (file_size < want) {
    throw TruncationError(path + ": payload truncated, header claims " +
                          std::to_string(h.frame_count) + " frames");
  }
}

}  // namespace

void write_video(const std::string& path, const VideoHeader& header,
                 const std::vector<Frame>& frames) {
  if (frames.size() != header.frame_count)
    throw InvalidRangeError(path + ": frame count does not match header");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  std::uint8_t raw[kHeaderBytes];
  encode_header(header, raw);
  out.write(reinterpret_cast<const char*>(raw), kHeaderBytes);
  for (const Frame& f : frames) {
    if (f.width != header.width || f.height != header.height ||
        f.channels != header.channels)
      throw DimensionError(path + ": frame does not match header dimensions");
    out.write(reinterpret_cast<const char*>(f.pixels.data()),
              static_cast<std::streamsize>(f.pixels.size()));
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

VideoFile::VideoFile(const std::string& path)
    : path_(path), stream_(path, std::ios::binary) {
  if (!stream_) throw IoError("cannot open: " + path);
  std::uint8_t raw[kHeaderBytes];
  stream_.read(reinterpret_cast<char*>(raw), kHeaderBytes);
  if (stream_.gcount() != static_cast<std::streamsize>(kHeaderBytes))
    throw FormatError(path + ": file shorter than an RVID header");
  header_ = decode_header(raw, path);
  std::error_code ec;
  auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat: " + path);
  check_payload(header_, size, path);
}

Frame VideoFile::read_frame(std::int64_t index) {
  if (index < 0 || index >= header_.frame_count)
    throw InvalidRangeError(path_ + ": frame index out of range");
  Frame f(header_.width, header_.height, header_.channels);
  const std::size_t bytes = header_.frame_bytes();
  stream_.clear();
  stream_.seekg(static_cast<std::streamoff>(kHeaderBytes + bytes * index));
  stream_.read(reinterpret_cast<char*>(f.pixels.data()),
               static_cast<std::streamsize>(bytes));
  if (stream_.gcount() != static_cast<std::streamsize>(bytes))
    throw TruncationError(path_ + ": short read");
  return f;
}

std::vector<Frame> VideoFile::read_range(std::int64_t begin, std::int64_t end) {
  if (begin < 0 || begin > end || end > header_.frame_count)
    throw InvalidRangeError(path_ + ": frame range out of bounds");
  std::vector<Frame> out;
  out.reserve(static_cast<size_t>(end - begin));
  for (std::int64_t i = begin; i < end; ++i) out.push_back(read_frame(i));
  return out;
}

std::vector<Frame> VideoFile::read_all() {
  return read_range(0, header_.frame_count);
}

std::pair<VideoHeader, std::vector<Frame>> read_video(const std::string& path) {
  VideoFile file(path);
  return {file.header(), file.read_all()};
}

VideoHeader read_header(const std::string& path) {
  return VideoFile(path).header();
}

VideoAsset asset_from_file(const std::string& asset_id,
                           const std::string& path) {
  VideoHeader h = read_header(path);
  VideoAsset asset;
  asset.asset_id = asset_id;
  asset.source_path = path;
  asset.width = h.width;
  asset.height = h.height;
  asset.fps_num = h.fps_num;
  asset.fps_den = h.fps_den;
  asset.frame_count = h.frame_count;
  asset.channels = h.channels;
  return asset;
}

}  // namespace vidpipe
