#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bvista/correlation.hpp"
#include "bvista/manifest.hpp"
#include "bvista/pipeline.hpp"
#include "bvista/raw_video.hpp"

namespace bvista {

/// SRCC / PLCC pair; empty when the correlation is undefined (constant
/// predictions).
struct CorrelationResult {
  std::optional<double> srcc;
  std::optional<double> plcc;
};

/// One row of the component ablation grid.
struct AblationRow {
  bool semantic = false;
  bool spatial = false;
  bool temporal = false;
  CorrelationResult correlation;

  /// "A", "S", "T", "A+S", ... in the order A, S, T.
  std::string label() const;
};

struct StrategyRow {
  AggregationStrategy strategy;
  CorrelationResult correlation;
};

struct BenchmarkRow {
  std::string video_path;
  double mos = 0.0;
  VideoScore score;
};

struct BenchmarkTiming {
  double scoring_seconds = 0.0;
  double total_seconds = 0.0;
};

struct BenchmarkReport {
  std::string dataset;
  std::size_t manifest_entries = 0;
  std::vector<BenchmarkRow> rows;  // manifest order
  std::vector<SkippedVideo> skipped;
  CorrelationResult overall;
  std::vector<AblationRow> ablation;       // 7 non-empty component subsets
  std::vector<StrategyRow> strategies;     // every aggregation strategy
  StatsMap stats;
  std::map<std::string, std::string> config;
  BenchmarkTiming timing;
};

struct BenchmarkOptions {
  PlccFit plcc_fit = PlccFit::None;
  StatsMode stats_mode = StatsMode::TwoPass;
  StatsMap fixed_stats;
  /// Extra key/value pairs echoed into the report's config section.
  std::map<std::string, std::string> config_echo;
};

/// Video id used for embedding lookups: the file name without extension.
std::string video_id_for(const std::filesystem::path& video_path);

/// Correlations of `predicted` against `mos`; undefined correlations are
/// left empty instead of throwing.
CorrelationResult correlate(std::span<const double> predicted, std::span<const double> mos,
                            PlccFit fit);

/// Component combination for an ablation subset under `combine`.
double combine_subset(const VideoScore& s, bool semantic, bool spatial, bool temporal,
                      Combine combine);

/// Scores every manifest entry and correlates q_unified with MOS, plus the
/// ablation grid and the strategy comparison. Throws InsufficientDataError
/// when fewer than 2 entries are scored, ArgumentError on duplicate ids.
BenchmarkReport run_benchmark(const DatasetManifest& manifest, const Scorer& scorer,
                              const VideoDecoder& decoder, const BenchmarkOptions& options = {});

}  // namespace bvista
