#include "bvista_tools/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bvista/benchmark.hpp"
#include "bvista/error.hpp"
#include "bvista/niqe.hpp"
#include "bvista/report.hpp"
#include "bvista/temporal.hpp"
#include "bvista_tools/media.hpp"
#include "bvista_tools/onnx_provider.hpp"

namespace bvista::tools {
namespace {

namespace fs = std::filesystem;

fs::path model_dir() {
  if (const char* env = std::getenv("BVISTA_MODEL_DIR")) return env;
#ifdef BVISTA_DEFAULT_MODEL_DIR
  return BVISTA_DEFAULT_MODEL_DIR;
#else
  return "models";
#endif
}

struct CommonOptions {
  std::string embeddings;
  std::string prompts;
  std::string niqe_model;
  std::string aggregation = "sigmoid-add";
  std::size_t workers = 1;
  std::string niqe_stats = "frames";
  double logit_scale = 1.0;
};

void add_model_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--niqe-model", o.niqe_model, "NIQE-MVG model file")
      ->default_str("<models>/niqe_reference.mvg");
}

void add_scoring_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--embeddings", o.embeddings,
                 "Embedding source: fixtures:PATH or runtime:MODEL.onnx")
      ->required();
  cmd.add_option("--prompts", o.prompts, "Prompt pair file (positive<TAB>negative per line)")
      ->default_str("<models>/prompts.tsv");
  add_model_options(cmd, o);
  cmd.add_option("--aggregation", o.aggregation, "Aggregation strategy")
      ->check(CLI::IsMember({"sigmoid-add", "sigmoid-mul", "linear-add", "direct-add"}))
      ->capture_default_str();
  cmd.add_option("--workers", o.workers, "Videos scored concurrently (0 = all cores)")
      ->capture_default_str();
  cmd.add_option("--niqe-stats", o.niqe_stats,
                 "NIQE normalisation pool: every frame or per-video means")
      ->check(CLI::IsMember({"frames", "videos"}))
      ->capture_default_str();
  cmd.add_option("--logit-scale", o.logit_scale, "Multiplier applied to DA before the sigmoid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::unique_ptr<EmbeddingProvider> make_provider(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const fs::path path = colon == std::string::npos ? fs::path() : fs::path(spec.substr(colon + 1));
  if (colon == std::string::npos || path.empty() || (kind != "fixtures" && kind != "runtime")) {
    throw CLI::ValidationError("--embeddings", "expected fixtures:PATH or runtime:PATH");
  }
  if (kind == "fixtures") return std::make_unique<FixtureEmbeddingProvider>(path);
  return std::make_unique<OnnxEmbeddingProvider>(path);
}

NiqeModel load_niqe_model(const CommonOptions& o) {
  return read_niqe_model(o.niqe_model.empty() ? model_dir() / "niqe_reference.mvg"
                                              : fs::path(o.niqe_model));
}

std::vector<PromptText> load_prompts(const CommonOptions& o) {
  if (!o.prompts.empty()) return read_prompt_file(o.prompts);
  const fs::path fallback = model_dir() / "prompts.tsv";
  return fs::exists(fallback) ? read_prompt_file(fallback) : default_prompt_texts();
}

struct ScoringSetup {
  std::unique_ptr<EmbeddingProvider> provider;
  std::unique_ptr<Scorer> scorer;
};

ScoringSetup make_scorer(const CommonOptions& o, bool skip_failures) {
  ScoringSetup s;
  s.provider = make_provider(o.embeddings);
  ScoringConfig config;
  config.strategy = parse_strategy(o.aggregation);
  config.workers = o.workers;
  config.niqe_stats_over_frames = o.niqe_stats == "frames";
  config.logit_scale = o.logit_scale;
  config.skip_failures = skip_failures;
  const auto texts = load_prompts(o);
  s.scorer = std::make_unique<Scorer>(*s.provider, embed_prompts(*s.provider, texts),
                                      load_niqe_model(o), config);
  return s;
}

std::vector<VideoJob> jobs_for(const std::vector<fs::path>& videos, const VideoDecoder& decoder,
                               const ViewConfig& views) {
  std::vector<VideoJob> jobs;
  for (const auto& v : videos) {
    jobs.push_back({video_id_for(v), [&decoder, v, views] {
                      auto source = decoder.open(v);
                      return build_views(*source, views);
                    }});
  }
  return jobs;
}

std::vector<fs::path> read_list(const fs::path& list) {
  std::ifstream in(list);
  if (!in) throw FormatError("cannot open video list " + list.string());
  std::vector<fs::path> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    fs::path p = line.substr(b, e - b + 1);
    out.push_back(p.is_relative() ? list.parent_path() / p : p);
  }
  return out;
}

void write_or_print(const std::string& target, const std::string& text, std::ostream& out) {
  if (target.empty() || target == "-") {
    out << text;
    return;
  }
  std::ofstream f(target);
  if (!f || !(f << text)) throw FormatError("cannot write " + target);
}

// --- subcommands -----------------------------------------------------------

struct ScoreArgs {
  CommonOptions common;
  std::vector<std::string> videos;
  std::string list;
  std::string stats;
  std::string out;
  std::string csv;
};

int run_score(const ScoreArgs& a, std::ostream& out) {
  std::vector<fs::path> videos(a.videos.begin(), a.videos.end());
  if (!a.list.empty()) {
    const auto listed = read_list(a.list);
    videos.insert(videos.end(), listed.begin(), listed.end());
  }
  if (videos.empty()) throw CLI::ValidationError("score", "give --video or --list");
  const StatsMap stats = read_stats_file(a.stats);
  const auto setup = make_scorer(a.common, false);
  AutoVideoDecoder decoder;
  const auto jobs = jobs_for(videos, decoder, setup.scorer->config().views);
  const CorpusResult result = setup.scorer->score_corpus(jobs, StatsMode::Fixed, stats);
  write_or_print(a.out, scores_to_json(result.scores, result.stats), out);
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    write_scores_csv(f, result.scores);
    if (!f) throw FormatError("cannot write " + a.csv);
  }
  return kExitOk;
}

struct BenchArgs {
  CommonOptions common;
  std::string manifest;
  std::string out;
  std::string csv;
  std::string plots;
  std::string stats;
  std::string export_stats;
  std::string plcc_fit = "none";
  bool skip_failures = false;
};

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const DatasetManifest manifest = read_manifest(a.manifest);
  const auto setup = make_scorer(a.common, a.skip_failures);
  AutoVideoDecoder decoder;
  BenchmarkOptions options;
  options.plcc_fit = parse_plcc_fit(a.plcc_fit);
  if (!a.stats.empty()) {
    options.stats_mode = StatsMode::Fixed;
    options.fixed_stats = read_stats_file(a.stats);
  }
  options.config_echo = {{"manifest", a.manifest},
                         {"embeddings", a.common.embeddings},
                         {"niqe_model", a.common.niqe_model.empty()
                                            ? (model_dir() / "niqe_reference.mvg").string()
                                            : a.common.niqe_model}};
  const BenchmarkReport report = run_benchmark(manifest, *setup.scorer, decoder, options);
  for (const auto& s : report.skipped) err << "skipped " << s.video_id << ": " << s.reason << '\n';
  write_report_json(a.out, report);
  if (!a.csv.empty()) write_report_csv(a.csv, report);
  if (!a.plots.empty()) write_scatter_plots(a.plots, report);
  if (!a.export_stats.empty()) write_stats_file(a.export_stats, report.stats);
  out << std::setprecision(4) << report.dataset << ": " << report.rows.size() << '/'
      << report.manifest_entries << " scored, SRCC "
      << (report.overall.srcc ? std::to_string(*report.overall.srcc) : "undefined") << ", PLCC "
      << (report.overall.plcc ? std::to_string(*report.overall.plcc) : "undefined") << '\n';
  return kExitOk;
}

struct FitArgs {
  std::vector<std::string> images;
  std::string out;
  std::size_t min_images = 10;
};

int run_fit(const FitArgs& a, std::ostream& out) {
  std::vector<fs::path> files;
  for (const auto& entry : a.images) {
    if (fs::is_directory(entry)) {
      std::vector<fs::path> in_dir;
      for (const auto& f : fs::directory_iterator(entry)) {
        if (f.is_regular_file()) in_dir.push_back(f.path());
      }
      std::sort(in_dir.begin(), in_dir.end());
      files.insert(files.end(), in_dir.begin(), in_dir.end());
    } else {
      files.emplace_back(entry);
    }
  }
  std::vector<FrameImage> corpus;
  for (const auto& f : files) corpus.push_back(to_luma(load_image(f)));
  PristineFitOptions options;
  options.min_images = a.min_images;
  const NiqeModel model = fit_pristine_model(corpus, {}, options);
  write_niqe_model(a.out, model);
  out << "fitted NIQE model from " << corpus.size() << " images -> " << a.out << '\n';
  return kExitOk;
}

struct ExportArgs {
  CommonOptions common;
  std::string manifest;
  std::vector<std::string> videos;
  std::string out;
};

int run_export(const ExportArgs& a, std::ostream& out) {
  std::vector<fs::path> videos(a.videos.begin(), a.videos.end());
  if (!a.manifest.empty()) {
    for (const auto& e : read_manifest(a.manifest).entries) videos.push_back(e.video_path);
  }
  if (videos.empty()) throw CLI::ValidationError("export-stats", "give --manifest or --video");
  const auto setup = make_scorer(a.common, false);
  AutoVideoDecoder decoder;
  const auto jobs = jobs_for(videos, decoder, setup.scorer->config().views);
  const RawCorpus raw = setup.scorer->raw_corpus(jobs);
  const StatsMap stats = setup.scorer->corpus_stats(raw.raw);
  write_stats_file(a.out, stats);
  out << "wrote statistics for " << stats.size() << " metrics over " << raw.raw.size()
      << " videos -> " << a.out << '\n';
  return kExitOk;
}

struct CurvatureArgs {
  std::string video;
  std::string domain = "both";
  std::string out;
  std::size_t workers = 1;
};

int run_curvature(const CurvatureArgs& a, std::ostream& out) {
  AutoVideoDecoder decoder;
  auto source = decoder.open(a.video);
  const VideoViews views = build_views(*source);
  const TemporalAnalysis t = analyze_temporal(views.temporal, a.workers);
  std::ostringstream s;
  s << std::setprecision(12) << "# domain frame curvature_rad\n";
  auto dump = [&](const char* name, const CurvatureSeries& c) {
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      s << name << ' ' << c.positions[i] << ' ' << c.values[i] << '\n';
    }
  };
  if (a.domain != "v1") dump("lgn", t.lgn);
  if (a.domain != "lgn") dump("v1", t.v1);
  s << "# raw_tpqi " << t.tpqi.value << (t.tpqi.degenerate ? " floor" : "") << '\n';
  write_or_print(a.out, s.str(), out);
  return kExitOk;
}

}  // namespace

int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opinion-unaware video quality index and benchmark harness", "bvista"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bvista 0.3.0");

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score videos with previously exported statistics");
  add_scoring_options(*score_cmd, score.common);
  score_cmd->add_option("--video", score.videos, "Video file (repeatable)");
  score_cmd->add_option("--list", score.list, "File with one video path per line");
  score_cmd->add_option("--stats", score.stats, "Statistics file from export-stats or bench")
      ->required();
  score_cmd->add_option("--out", score.out, "JSON output (default stdout)");
  score_cmd->add_option("--csv", score.csv, "Also write per-video CSV");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Correlate scores with MOS over a manifest");
  add_scoring_options(*bench_cmd, bench.common);
  bench_cmd->add_option("--manifest", bench.manifest, "CSV of video_path,mos")->required();
  bench_cmd->add_option("--out", bench.out, "JSON report")->required();
  bench_cmd->add_option("--csv", bench.csv, "Per-video CSV rows");
  bench_cmd->add_option("--plots", bench.plots, "Directory for SVG scatter plots");
  bench_cmd->add_option("--stats", bench.stats, "Use fixed statistics instead of two-pass");
  bench_cmd->add_option("--export-stats", bench.export_stats, "Write the statistics used");
  bench_cmd->add_option("--plcc-fit", bench.plcc_fit, "Mapping before PLCC")
      ->check(CLI::IsMember({"none", "logistic4"}))
      ->capture_default_str();
  bench_cmd->add_flag("--skip-failures", bench.skip_failures,
                      "Log undecodable videos and continue");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-niqe", "Fit a pristine NIQE model from images");
  fit_cmd->add_option("--images", fit.images, "Image files or directories")->required();
  fit_cmd->add_option("--out", fit.out, "Model file to write")->required();
  fit_cmd->add_option("--min-images", fit.min_images, "Minimum contributing images")
      ->capture_default_str();

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-stats", "Write corpus statistics for score");
  add_scoring_options(*export_cmd, exp.common);
  export_cmd->add_option("--manifest", exp.manifest, "CSV of video_path,mos");
  export_cmd->add_option("--video", exp.videos, "Video file (repeatable)");
  export_cmd->add_option("--out", exp.out, "Statistics file")->required();

  CurvatureArgs curv;
  auto* curv_cmd = app.add_subcommand("curvature-dump", "Print per-frame trajectory curvature");
  curv_cmd->add_option("--video", curv.video, "Video file")->required();
  curv_cmd->add_option("--domain", curv.domain, "Which domain to print")
      ->check(CLI::IsMember({"lgn", "v1", "both"}))
      ->capture_default_str();
  curv_cmd->add_option("--out", curv.out, "Output file (default stdout)");
  curv_cmd->add_option("--workers", curv.workers, "Frames processed concurrently")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*score_cmd) return run_score(score, out);
    if (*bench_cmd) return run_bench(bench, out, err);
    if (*fit_cmd) return run_fit(fit, out);
    if (*export_cmd) return run_export(exp, out);
    if (*curv_cmd) return run_curvature(curv, out);
  } catch (const CLI::ValidationError& e) {
    err << "bvista: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bvista: " << e.what() << '\n';
    return kExitProcessing;
  }
  return kExitUsage;
}

}  // namespace bvista::tools
