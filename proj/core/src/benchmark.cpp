#include "bvista/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "bvista/error.hpp"

namespace bvista {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string AblationRow::label() const {
  std::string out;
  auto add = [&](bool on, const char* tag) {
    if (!on) return;
    if (!out.empty()) out += '+';
    out += tag;
  };
  add(semantic, "A");
  add(spatial, "S");
  add(temporal, "T");
  return out;
}

std::string video_id_for(const std::filesystem::path& video_path) {
  return video_path.stem().string();
}

CorrelationResult correlate(std::span<const double> predicted, std::span<const double> mos,
                            PlccFit fit) {
  CorrelationResult r;
  try {
    r.srcc = srcc(predicted, mos);
  } catch (const UndefinedCorrelationError&) {
  }
  try {
    r.plcc = plcc(predicted, mos, fit);
  } catch (const UndefinedCorrelationError&) {
  }
  return r;
}

double combine_subset(const VideoScore& s, bool semantic, bool spatial, bool temporal,
                      Combine combine) {
  const bool add = combine == Combine::Addition;
  double v = add ? 0.0 : 1.0;
  auto fold = [&](bool on, double q) {
    if (on) v = add ? v + q : v * q;
  };
  fold(semantic, s.q_a);
  fold(spatial, s.q_s);
  fold(temporal, s.q_t);
  return v;
}

BenchmarkReport run_benchmark(const DatasetManifest& manifest, const Scorer& scorer,
                              const VideoDecoder& decoder, const BenchmarkOptions& options) {
  const auto t0 = Clock::now();
  BenchmarkReport report;
  report.dataset = manifest.name;
  report.manifest_entries = manifest.entries.size();

  std::vector<VideoJob> jobs;
  std::set<std::string> ids;
  const ViewConfig views = scorer.config().views;
  for (const auto& entry : manifest.entries) {
    const std::string id = video_id_for(entry.video_path);
    if (!ids.insert(id).second) {
      throw ArgumentError("two manifest entries share the video id '" + id + "'");
    }
    jobs.push_back({id, [&decoder, path = entry.video_path, views] {
                      auto source = decoder.open(path);
                      return build_views(*source, views);
                    }});
  }

  RawCorpus pass1 = scorer.raw_corpus(jobs);
  report.timing.scoring_seconds = seconds_since(t0);
  report.skipped = std::move(pass1.skipped);
  if (pass1.raw.size() < 2) {
    throw InsufficientDataError("only " + std::to_string(pass1.raw.size()) + " of " +
                                std::to_string(jobs.size()) +
                                " videos were scored; correlation needs at least 2");
  }
  report.stats = options.stats_mode == StatsMode::TwoPass ? scorer.corpus_stats(pass1.raw)
                                                          : options.fixed_stats;

  std::vector<double> mos;
  for (std::size_t i = 0; i < pass1.raw.size(); ++i) {
    const auto& entry = manifest.entries[pass1.job_index[i]];
    report.rows.push_back(
        {entry.video_path.string(), entry.mos, scorer.score(pass1.raw[i], report.stats)});
    mos.push_back(entry.mos);
  }

  const Combine combine = scorer.config().strategy.combine;
  std::vector<double> predicted(report.rows.size());
  for (int mask = 1; mask < 8; ++mask) {
    AblationRow row{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, {}};
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      predicted[i] =
          combine_subset(report.rows[i].score, row.semantic, row.spatial, row.temporal, combine);
    }
    row.correlation = correlate(predicted, mos, options.plcc_fit);
    report.ablation.push_back(std::move(row));
  }
  // Grid order: singles, pairs, then all three.
  std::stable_sort(report.ablation.begin(), report.ablation.end(),
                   [](const AblationRow& a, const AblationRow& b) {
                     return a.semantic + a.spatial + a.temporal <
                            b.semantic + b.spatial + b.temporal;
                   });

  for (const char* name : {"sigmoid-add", "sigmoid-mul", "linear-add", "direct-add"}) {
    StrategyRow row{parse_strategy(name), {}};
    try {
      for (std::size_t i = 0; i < report.rows.size(); ++i) {
        predicted[i] = scorer.score(pass1.raw[i], report.stats, row.strategy).q_unified;
      }
      row.correlation = correlate(predicted, mos, options.plcc_fit);
    } catch (const Error&) {
      // Statistics this strategy needs are missing; leave it undefined.
    }
    report.strategies.push_back(std::move(row));
  }

  std::vector<double> unified;
  for (const auto& r : report.rows) unified.push_back(r.score.q_unified);
  report.overall = correlate(unified, mos, options.plcc_fit);

  report.config = options.config_echo;
  report.config["aggregation"] = strategy_name(scorer.config().strategy);
  report.config["plcc_fit"] = plcc_fit_name(options.plcc_fit);
  report.config["stats_mode"] = options.stats_mode == StatsMode::TwoPass ? "two-pass" : "fixed";
  report.config["niqe_stats"] = scorer.config().niqe_stats_over_frames ? "frames" : "videos";
  report.config["workers"] = std::to_string(scorer.config().workers);
  report.config["prompt_pairs"] = std::to_string(scorer.prompts().size());
  report.timing.total_seconds = seconds_since(t0);
  return report;
}

}  // namespace bvista
