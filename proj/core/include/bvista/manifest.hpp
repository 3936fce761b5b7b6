#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace bvista {

struct ManifestEntry {
  std::filesystem::path video_path;
  double mos = 0.0;
};

struct DatasetManifest {
  std::string name;
  std::vector<ManifestEntry> entries;
  /// Observed (min, max) of the MOS column.
  std::pair<double, double> mos_scale{0.0, 0.0};
};

/// Reads `video_path,mos` lines. A first line whose second field is not a
/// number is taken as a header. Relative paths are resolved against the
/// manifest's directory. Blank lines and '#' comments are skipped.
/// Throws FormatError on malformed lines, duplicate paths, non-finite MOS
/// or an empty manifest.
DatasetManifest read_manifest(const std::filesystem::path& path);

/// Writes a header line and one row per entry.
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

}  // namespace bvista
