#include "bvista/pipeline.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "bvista/error.hpp"
#include "bvista/parallel.hpp"

namespace bvista {
namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

const CorpusStats& require_stats(const StatsMap& stats, const std::string& tag) {
  const auto it = stats.find(tag);
  if (it == stats.end()) throw FormatError("statistics for metric '" + tag + "' are missing");
  return it->second;
}

Scorer::Scorer(const EmbeddingProvider& embeddings, std::vector<PromptPair> prompts,
               NiqeModel niqe_model, ScoringConfig config,
               std::shared_ptr<const PerceptualDomainTransform> lgn,
               std::shared_ptr<const PerceptualDomainTransform> v1)
    : embeddings_(embeddings),
      prompts_(std::move(prompts)),
      niqe_model_(std::move(niqe_model)),
      config_(std::move(config)),
      lgn_(lgn ? std::move(lgn) : std::make_shared<LgnTransform>()),
      v1_(v1 ? std::move(v1) : std::make_shared<V1Transform>()) {
  if (prompts_.empty()) throw ArgumentError("at least one prompt pair is required");
  for (const auto& p : prompts_) {
    if (p.positive_embedding.dimension() != embeddings_.dimension() ||
        p.negative_embedding.dimension() != embeddings_.dimension()) {
      throw ArgumentError("prompt embedding dimension differs from the image encoder's");
    }
  }
  niqe_model_.validate();
  if (static_cast<std::size_t>(niqe_model_.mean.size()) != config_.niqe.feature_count()) {
    throw ArgumentError("NIQE model has " + std::to_string(niqe_model_.mean.size()) +
                        " dimensions, configuration produces " +
                        std::to_string(config_.niqe.feature_count()));
  }
}

RawVideoMetrics Scorer::raw_metrics(const std::string& video_id, const VideoViews& views) const {
  if (views.aesthetic.empty() || views.spatial.empty() || views.temporal.empty()) {
    throw EmptyInputError(video_id + ": a view is empty");
  }
  RawVideoMetrics out;
  out.video_id = video_id;

  std::vector<EmbeddingVector> frame_embeddings;
  frame_embeddings.reserve(views.aesthetic.size());
  {
    std::unique_lock lock(embed_mutex_, std::defer_lock);
    if (!embeddings_.reentrant()) lock.lock();
    for (std::size_t i = 0; i < views.aesthetic.size(); ++i) {
      frame_embeddings.push_back(embeddings_.embed_image(views.aesthetic[i], {video_id, i}));
    }
  }
  for (const auto& pair : prompts_) {
    out.da_values.push_back(differential_affinity(frame_embeddings, pair));
  }

  std::size_t flat_frames = 0;
  for (const auto& frame : views.spatial) {
    try {
      out.frame_niqe.push_back(niqe_score(to_luma(frame), niqe_model_, config_.niqe));
    } catch (const DegenerateError&) {
      ++flat_frames;
    }
  }
  if (out.frame_niqe.empty()) {
    throw DegenerateError(video_id + ": no spatial frame has usable natural-scene statistics");
  }
  if (flat_frames > 0) out.flags.push_back("niqe-skipped-frames:" + std::to_string(flat_frames));
  out.raw_niqe = mean_of(out.frame_niqe);

  const TemporalAnalysis temporal =
      analyze_temporal(views.temporal, *lgn_, *v1_, config_.frame_workers);
  out.tpqi = temporal.tpqi;
  out.lgn_degenerate = temporal.lgn.degenerate_count;
  out.v1_degenerate = temporal.v1.degenerate_count;
  if (out.tpqi.degenerate) out.flags.push_back("tpqi-floor");
  if (out.lgn_degenerate + out.v1_degenerate > 0) {
    out.flags.push_back("static-triplets:" + std::to_string(out.lgn_degenerate) + "," +
                        std::to_string(out.v1_degenerate));
  }
  return out;
}

StatsMap Scorer::corpus_stats(std::span<const RawVideoMetrics> raw) const {
  if (raw.size() < 2) {
    throw DegenerateError("corpus normalisation needs at least 2 scored videos, got " +
                          std::to_string(raw.size()) +
                          "; score single videos with exported statistics (fixed-stats mode)");
  }
  StatsMap out;
  std::vector<double> niqe, tpqi;
  for (const auto& r : raw) {
    if (config_.niqe_stats_over_frames) {
      niqe.insert(niqe.end(), r.frame_niqe.begin(), r.frame_niqe.end());
    } else {
      niqe.push_back(r.raw_niqe);
    }
    tpqi.push_back(r.tpqi.value);
  }
  out.emplace(metric::kNiqe, compute_corpus_stats(niqe, std::string(metric::kNiqe)));
  out.emplace(metric::kTpqi, compute_corpus_stats(tpqi, std::string(metric::kTpqi)));
  for (std::size_t p = 0; p < prompts_.size(); ++p) {
    std::vector<double> da;
    for (const auto& r : raw) da.push_back(r.da_values.at(p));
    const std::string tag = metric::differential_affinity(p);
    try {
      out.emplace(tag, compute_corpus_stats(da, tag));
    } catch (const DegenerateError&) {
      // Constant affinities leave this tag out.
    }
  }
  return out;
}

VideoScore Scorer::score(const RawVideoMetrics& raw, const StatsMap& stats) const {
  return score(raw, stats, config_.strategy);
}

VideoScore Scorer::score(const RawVideoMetrics& raw, const StatsMap& stats,
                         const AggregationStrategy& strategy) const {
  if (raw.da_values.size() != prompts_.size()) {
    throw ArgumentError(raw.video_id + ": differential affinity count differs from prompts");
  }
  VideoScore s;
  s.video_id = raw.video_id;
  s.raw_niqe = raw.raw_niqe;
  s.raw_tpqi = raw.tpqi.value;
  s.da_values = raw.da_values;
  s.flags = raw.flags;

  switch (strategy.rescale) {
    case Rescale::GaussianSigmoid:
      s.q_a = semantic_index(raw.da_values, config_.logit_scale);
      break;
    case Rescale::LinearNormalize:
      for (std::size_t p = 0; p < raw.da_values.size(); ++p) {
        s.q_a += rescale(raw.da_values[p], require_stats(stats, metric::differential_affinity(p)),
                         Orientation::HigherBetter, Rescale::LinearNormalize);
      }
      break;
    case Rescale::DirectRaw:
      s.q_a = std::accumulate(raw.da_values.begin(), raw.da_values.end(), 0.0);
      break;
  }

  if (strategy.rescale == Rescale::DirectRaw) {
    s.q_s = -raw.raw_niqe;
    s.q_t = -raw.tpqi.value;
  } else {
    const CorpusStats& niqe = require_stats(stats, std::string(metric::kNiqe));
    const CorpusStats& tpqi = require_stats(stats, std::string(metric::kTpqi));
    double q_s = 0.0;
    for (double q : raw.frame_niqe) {
      q_s += rescale(q, niqe, Orientation::LowerBetter, strategy.rescale);
    }
    s.q_s = q_s / static_cast<double>(raw.frame_niqe.size());
    s.q_t = rescale(raw.tpqi.value, tpqi, Orientation::LowerBetter, strategy.rescale);
  }
  s.q_unified = unified_index(s.q_a, s.q_s, s.q_t, strategy.combine);
  return s;
}

RawCorpus Scorer::raw_corpus(std::span<const VideoJob> jobs) const {
  if (jobs.empty()) throw EmptyInputError("no videos to score");
  std::vector<std::optional<RawVideoMetrics>> pass1(jobs.size());
  std::vector<std::string> failures(jobs.size());

  parallel_for(jobs.size(), config_.workers, [&](std::size_t i) {
    try {
      const VideoViews views = jobs[i].load();
      pass1[i] = raw_metrics(jobs[i].video_id, views);
    } catch (const std::exception& e) {
      if (!config_.skip_failures) throw;
      failures[i] = e.what();
    }
  });

  RawCorpus out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (pass1[i]) {
      out.raw.push_back(std::move(*pass1[i]));
      out.job_index.push_back(i);
    } else {
      out.skipped.push_back({jobs[i].video_id, failures[i]});
    }
  }
  return out;
}

CorpusResult Scorer::score_corpus(std::span<const VideoJob> jobs, StatsMode mode,
                                  const StatsMap& fixed_stats) const {
  RawCorpus pass1 = raw_corpus(jobs);
  CorpusResult out;
  out.raw = std::move(pass1.raw);
  out.skipped = std::move(pass1.skipped);
  out.stats = mode == StatsMode::TwoPass ? corpus_stats(out.raw) : fixed_stats;
  out.scores.resize(out.raw.size());
  parallel_for(out.raw.size(), config_.workers,
               [&](std::size_t i) { out.scores[i] = score(out.raw[i], out.stats); });
  return out;
}

}  // namespace bvista
