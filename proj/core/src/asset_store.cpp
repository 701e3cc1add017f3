#include "vidpipe/asset_store.hpp"

#include <algorithm>
#include <filesystem>

#include "vidpipe/errors.hpp"
#include "vidpipe/rvid.hpp"

namespace fs = std::filesystem;

namespace vidpipe {

AssetStore::AssetStore(std::string assets_dir) : dir_(std::move(assets_dir)) {}

std::string AssetStore::path_for(const std::string& asset_id) const {
  return (fs::path(dir_) / (asset_id + ".rvid")).string();
}

VideoAsset AssetStore::meta(const std::string& asset_id) const {
  {
    std::lock_guard lock(mutex_);
    auto it = meta_cache_.find(asset_id);
    if (it != meta_cache_.end()) return it->second;
  }
  VideoAsset asset = asset_from_file(asset_id, path_for(asset_id));
  std::lock_guard lock(mutex_);
  meta_cache_.emplace(asset_id, asset);
  return asset;
}

std::vector<Frame> AssetStore::load_clip_frames(const Clip& clip) const {
  VideoFile file(path_for(clip.asset_id));
  return file.read_range(clip.start_frame, clip.end_frame);
}

AssetStore::Keyframes AssetStore::load_keyframes(const Clip& clip) const {
  Keyframes out;
  out.local_indices = keyframe_indices(clip.length());
  VideoFile file(path_for(clip.asset_id));
  for (size_t i = 0; i < out.local_indices.size(); ++i) {
    out.absolute_indices[i] = clip.start_frame + out.local_indices[i];
    out.frames.push_back(file.read_frame(out.absolute_indices[i]));
  }
  return out;
}

std::vector<std::string> AssetStore::scan() const {
  if (!fs::is_directory(dir_))
    throw IoError("not a directory: " + dir_);
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".rvid")
      ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace vidpipe
