#include "bvista/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <string_view>

#include "bvista/error.hpp"

namespace bvista {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open manifest " + path.string());

  DatasetManifest m;
  m.name = path.stem().string();
  const auto base = path.parent_path();
  std::set<std::filesystem::path> seen;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.rfind(',');
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (comma == std::string_view::npos) throw FormatError(where + ": expected `video_path,mos`");
    const std::string_view video = trim(row.substr(0, comma));
    const auto mos = parse_number(trim(row.substr(comma + 1)));
    if (!mos) {
      if (first_record) {
        first_record = false;
        continue;  // header
      }
      throw FormatError(where + ": MOS is not a number");
    }
    first_record = false;
    if (video.empty()) throw FormatError(where + ": empty video path");
    if (!std::isfinite(*mos)) throw FormatError(where + ": MOS must be finite");
    std::filesystem::path p(video);
    if (p.is_relative()) p = base / p;
    p = p.lexically_normal();
    if (!seen.insert(p).second) throw FormatError(where + ": duplicate video " + p.string());
    m.entries.push_back({p, *mos});
  }
  if (m.entries.empty()) throw FormatError(path.string() + ": manifest has no entries");
  const auto [lo, hi] = std::minmax_element(
      m.entries.begin(), m.entries.end(),
      [](const ManifestEntry& a, const ManifestEntry& b) { return a.mos < b.mos; });
  m.mos_scale = {lo->mos, hi->mos};
  return m;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write manifest " + path.string());
  out << "video_path,mos\n" << std::setprecision(17);
  for (const auto& e : manifest.entries) out << e.video_path.string() << ',' << e.mos << '\n';
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace bvista
