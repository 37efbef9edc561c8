#ifndef QCANON_CACHE_HPP
#define QCANON_CACHE_HPP

#include <filesystem>
#include <string>

#include "qcanon/canon.hpp"

namespace qcanon {

// On-disk store for one (type, reference word): a manifest plus one file per
// canonical slice and one for the root vectors of each known word. Elements
// are not stored; they are rebuilt from the PBW coefficients on load.
class SliceCache {
 public:
  static constexpr int kFormatVersion = 1;

  SliceCache(std::filesystem::path root, const RootDatum& rd, const Word& reference);

  const std::filesystem::path& dir() const { return dir_; }

  struct LoadResult {
    int slices = 0;
    // Empty unless the cache existed but was discarded (version mismatch or
    // unreadable/corrupt data); the caller reports it and rebuilds.
    std::string notice;
  };
  // Loads everything stored at heights <= ctx.height_bound(). Root vectors
  // must be loaded before the first use of a word's PBW basis.
  LoadResult load(Context& ctx) const;

  // Writes the manifest and every slice of ctx not already on disk. Files are
  // written to a temporary name and renamed, so readers never see partial
  // files. Callers must not run two stores on one directory concurrently.
  // fresh ignores the existing manifest and rewrites every file (after a
  // load that reported a notice).
  void store(Context& ctx, bool fresh = false) const;

 private:
  std::filesystem::path dir_;
  std::string type_;
  Word reference_;
};

}  // namespace qcanon

#endif
