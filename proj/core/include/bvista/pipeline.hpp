#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "bvista/aggregation.hpp"
#include "bvista/embedding.hpp"
#include "bvista/niqe.hpp"
#include "bvista/perceptual_transform.hpp"
#include "bvista/semantic_affinity.hpp"
#include "bvista/temporal.hpp"
#include "bvista/video_ingest.hpp"

namespace bvista {

using StatsMap = std::map<std::string, CorpusStats>;

/// Unnormalised per-video measurements (pass 1).
struct RawVideoMetrics {
  std::string video_id;
  std::vector<double> da_values;    // one per prompt pair
  std::vector<double> frame_niqe;   // one per usable spatial frame
  double raw_niqe = 0.0;            // mean of frame_niqe
  RawTpqiScore tpqi;
  std::size_t lgn_degenerate = 0;
  std::size_t v1_degenerate = 0;
  std::vector<std::string> flags;
};

/// Final per-video result (pass 2).
struct VideoScore {
  std::string video_id;
  double q_a = 0.0;
  double q_s = 0.0;
  double q_t = 0.0;
  double q_unified = 0.0;
  double raw_niqe = 0.0;
  double raw_tpqi = 0.0;
  std::vector<double> da_values;
  std::vector<std::string> flags;

  friend bool operator==(const VideoScore&, const VideoScore&) = default;
};

struct ScoringConfig {
  ViewConfig views;
  NiqeConfig niqe;
  AggregationStrategy strategy;
  double logit_scale = 1.0;
  /// NIQE corpus statistics over every scored frame (true) or over the
  /// per-video means (false).
  bool niqe_stats_over_frames = true;
  /// Videos scored concurrently; 0 = hardware concurrency.
  std::size_t workers = 1;
  /// Workers used for per-frame responses inside one video.
  std::size_t frame_workers = 1;
  /// Record failing videos as skipped instead of aborting the corpus.
  bool skip_failures = false;
};

/// A video to score: its id and a loader that decodes it on demand, so the
/// corpus never needs to be resident at once.
struct VideoJob {
  std::string video_id;
  std::function<VideoViews()> load;
};

struct SkippedVideo {
  std::string video_id;
  std::string reason;
};

struct RawCorpus {
  std::vector<RawVideoMetrics> raw;    // scored videos, input order
  std::vector<std::size_t> job_index;  // position of each in the job list
  std::vector<SkippedVideo> skipped;
};

struct CorpusResult {
  std::vector<RawVideoMetrics> raw;  // scored videos, input order
  std::vector<VideoScore> scores;    // parallel to raw
  std::vector<SkippedVideo> skipped;
  StatsMap stats;
};

enum class StatsMode { TwoPass, Fixed };

class Scorer {
 public:
  /// `embeddings` must outlive the scorer. Null transforms select the
  /// defaults. Throws ArgumentError when there are no prompts or their
  /// dimension differs from the provider's.
  Scorer(const EmbeddingProvider& embeddings, std::vector<PromptPair> prompts,
         NiqeModel niqe_model, ScoringConfig config = {},
         std::shared_ptr<const PerceptualDomainTransform> lgn = nullptr,
         std::shared_ptr<const PerceptualDomainTransform> v1 = nullptr);

  const ScoringConfig& config() const noexcept { return config_; }
  const std::vector<PromptPair>& prompts() const noexcept { return prompts_; }

  RawVideoMetrics raw_metrics(const std::string& video_id, const VideoViews& views) const;

  /// niqe, tpqi and (when their spread is non-zero) da<p> statistics.
  /// Throws DegenerateError when fewer than two videos are given.
  StatsMap corpus_stats(std::span<const RawVideoMetrics> raw) const;

  VideoScore score(const RawVideoMetrics& raw, const StatsMap& stats) const;
  VideoScore score(const RawVideoMetrics& raw, const StatsMap& stats,
                   const AggregationStrategy& strategy) const;

  /// Pass 1 over every job on the worker pool. Failures abort unless
  /// config().skip_failures is set.
  RawCorpus raw_corpus(std::span<const VideoJob> jobs) const;

  /// Pass 1 in parallel, then stats (TwoPass) or `fixed_stats` (Fixed),
  /// then pass 2. Output keeps job order.
  CorpusResult score_corpus(std::span<const VideoJob> jobs, StatsMode mode,
                            const StatsMap& fixed_stats = {}) const;

 private:
  const EmbeddingProvider& embeddings_;
  std::vector<PromptPair> prompts_;
  NiqeModel niqe_model_;
  ScoringConfig config_;
  std::shared_ptr<const PerceptualDomainTransform> lgn_;
  std::shared_ptr<const PerceptualDomainTransform> v1_;
  mutable std::mutex embed_mutex_;
};

/// Looks up a metric's stats; throws FormatError naming the missing tag.
const CorpusStats& require_stats(const StatsMap& stats, const std::string& tag);

}  // namespace bvista
