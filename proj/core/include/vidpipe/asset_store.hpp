#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "vidpipe/frame.hpp"
#include "vidpipe/model.hpp"

namespace vidpipe {

/// Resolves asset ids to RVID files in one directory
/// (<dir>/<asset_id>.rvid) and loads clip frame ranges. Header metadata
/// is cached; loads are safe from concurrent workers.
class AssetStore {
 public:
  explicit AssetStore(std::string assets_dir);

  const std::string& dir() const { return dir_; }
  std::string path_for(const std::string& asset_id) const;

  VideoAsset meta(const std::string& asset_id) const;
  std::vector<Frame> load_clip_frames(const Clip& clip) const;

  struct Keyframes {
    std::vector<Frame> frames;                   // always 4
    std::array<std::int64_t, 4> local_indices{};
    std::array<std::int64_t, 4> absolute_indices{};
  };
  Keyframes load_keyframes(const Clip& clip) const;

  /// Sorted asset ids of every *.rvid file in the directory.
  std::vector<std::string> scan() const;

 private:
  std::string dir_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, VideoAsset> meta_cache_;
};

}  // namespace vidpipe
