#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bvista/benchmark.hpp"

namespace bvista {

/// JSON document with the BenchmarkReport fields. Undefined correlations
/// are written as null.
std::string report_to_json(const BenchmarkReport& report);
void write_report_json(const std::filesystem::path& path, const BenchmarkReport& report);

/// Schema problems in a report document; empty when it validates.
std::vector<std::string> validate_report_json(std::string_view json_text);

/// Per-video rows: video_path, video_id, mos, q_a, q_s, q_t, q_unified,
/// raw_niqe, raw_tpqi, da0..daP-1, flags (';'-joined).
void write_report_csv(const std::filesystem::path& path, const BenchmarkReport& report);

/// Scores of a `score` run (no MOS): same columns minus video_path and mos.
void write_scores_csv(std::ostream& out, std::span<const VideoScore> scores);
std::string scores_to_json(std::span<const VideoScore> scores, const StatsMap& stats);

/// Minimal scatter plot of y against x.
std::string scatter_svg(std::span<const double> x, std::span<const double> y,
                        std::string_view x_label, std::string_view y_label,
                        std::string_view title);

/// Writes <dir>/<metric>_vs_mos.svg for q_unified, q_a, q_s and q_t.
/// Returns the written paths.
std::vector<std::filesystem::path> write_scatter_plots(const std::filesystem::path& dir,
                                                       const BenchmarkReport& report);

}  // namespace bvista
