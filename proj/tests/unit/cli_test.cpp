#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "bvista/aggregation.hpp"
#include "bvista/report.hpp"
#include "bvista_tools/cli.hpp"
#include "synthetic.hpp"

namespace bvista::tools {
namespace {

using bvista::testing::TempDir;

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "bvista");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Four short .bvraw clips with fixture embeddings and a manifest.
class CliCorpus : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir();
    bvista::testing::SyntheticCorpusOptions o;
    o.width = 64;
    o.height = 48;
    o.frames = 6;
    o.fps = 3.0;
    o.aesthetic_frames = 32;
    auto corpus = bvista::testing::make_synthetic_corpus(o);
    DatasetManifest manifest{"cli", {}, {}};
    for (std::size_t i : {0u, 1u, 2u, 3u}) {
      const auto& e = corpus.manifest.entries[i];
      auto src = corpus.decoder.open(e.video_path);
      std::vector<FrameImage> frames;
      while (auto f = src->next()) frames.push_back(std::move(*f));
      const auto path = dir_->path() / e.video_path.filename();
      write_raw_video(path, frames, o.fps);
      manifest.entries.push_back({path, e.mos});
    }
    write_manifest(*dir_ / "cli.csv", manifest);
    write_embedding_fixtures(*dir_ / "emb.txt", corpus.embeddings);
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string p(const std::string& name) { return (*dir_ / name).string(); }
  static std::string embeddings() { return "fixtures:" + p("emb.txt"); }

  static TempDir* dir_;
};

TempDir* CliCorpus::dir_ = nullptr;

TEST(Cli, HelpAndUsageErrors) {
  const CliResult help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("bench"), std::string::npos);

  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  const CliResult missing = run({"bench", "--out", "x.json", "--embeddings", "fixtures:e"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("--manifest"), std::string::npos);
  EXPECT_EQ(run({"bench", "--manifest", "m.csv", "--out", "x.json", "--embeddings", "e",
                 "--aggregation", "median"})
                .code,
            kExitUsage);
}

TEST(Cli, ProcessingErrorsExitOne) {
  TempDir dir;
  const CliResult r = run({"bench", "--manifest", (dir / "none.csv").string(), "--out",
                     (dir / "r.json").string(), "--embeddings", "fixtures:x"});
  EXPECT_EQ(r.code, kExitProcessing);
  EXPECT_EQ(r.err.rfind("bvista: ", 0), 0u);
}

TEST(Cli, BadEmbeddingSpecIsUsageError) {
  TempDir dir;
  std::ofstream(dir / "m.csv") << "a.bvraw,1\nb.bvraw,2\n";
  const CliResult r = run({"bench", "--manifest", (dir / "m.csv").string(), "--out",
                     (dir / "r.json").string(), "--embeddings", "onnx-ish"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliCorpus, BenchWritesEveryArtefact) {
  const CliResult r = run({"bench", "--manifest", p("cli.csv"), "--out", p("report.json"), "--csv",
                     p("rows.csv"), "--plots", p("plots"), "--export-stats", p("stats.txt"),
                     "--embeddings", embeddings(), "--plcc-fit", "logistic4", "--workers", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("cli: 4/4 scored"), std::string::npos) << r.out;
  const std::string report = slurp(p("report.json"));
  EXPECT_TRUE(validate_report_json(report).empty());
  const auto doc = nlohmann::json::parse(report);
  EXPECT_EQ(doc["config"]["manifest"], p("cli.csv"));
  EXPECT_EQ(doc["rows"].size(), 4u);
  EXPECT_TRUE(std::filesystem::exists(p("plots/q_t_vs_mos.svg")));
  EXPECT_EQ(read_stats_file(p("stats.txt")).count("niqe"), 1u);
  EXPECT_NE(slurp(p("rows.csv")).find("camera_s1"), std::string::npos);
}

TEST_F(CliCorpus, ExportThenScoreWithFixedStats) {
  ASSERT_EQ(run({"export-stats", "--manifest", p("cli.csv"), "--out", p("fixed.txt"),
                 "--embeddings", embeddings()})
                .code,
            kExitOk);
  {
    std::ofstream list(p("list.txt"));
    list << "# two clips\ncamera_s0.bvraw\n\ncamera_s2.bvraw\n";
  }
  const CliResult r = run({"score", "--list", p("list.txt"), "--video", p("astronaut_s0.bvraw"),
                     "--stats", p("fixed.txt"), "--embeddings", embeddings(), "--csv",
                     p("scores.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["scores"].size(), 3u);
  EXPECT_EQ(doc["scores"][0]["video_id"], "astronaut_s0");
  EXPECT_EQ(doc["scores"][1]["video_id"], "camera_s0");
  EXPECT_NE(slurp(p("scores.csv")).find("camera_s2"), std::string::npos);

  EXPECT_EQ(run({"score", "--stats", p("fixed.txt"), "--embeddings", embeddings()}).code,
            kExitUsage);
}

TEST_F(CliCorpus, SingleVideoBenchIsRejected) {
  std::ofstream(p("one.csv")) << p("camera_s0.bvraw") << ",3\n";
  const CliResult r = run({"bench", "--manifest", p("one.csv"), "--out", p("one.json"),
                     "--embeddings", embeddings()});
  EXPECT_EQ(r.code, kExitProcessing);
}

TEST_F(CliCorpus, CurvatureDump) {
  const CliResult r = run({"curvature-dump", "--video", p("camera_s1.bvraw"), "--domain", "v1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# domain frame curvature_rad");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("v1 ", 0) == 0) ++rows;
    EXPECT_EQ(line.rfind("lgn", 0), std::string::npos);
  }
  EXPECT_EQ(rows, 4u);
  EXPECT_NE(r.out.find("# raw_tpqi "), std::string::npos);
}

TEST(Cli, FitNiqeFromImageDirectory) {
  TempDir dir;
  const auto images = (bvista::testing::data_dir() / "images").string();
  const CliResult r = run({"fit-niqe", "--images", images, "--out", (dir / "m.mvg").string(),
                     "--min-images", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("from 11 images"), std::string::npos);
  EXPECT_EQ(read_niqe_model(dir / "m.mvg").mean.size(), 36);

  const CliResult too_few = run({"fit-niqe", "--images", images + "/camera.pgm", "--out",
                           (dir / "n.mvg").string()});
  EXPECT_EQ(too_few.code, kExitProcessing);
}

}  // namespace
}  // namespace bvista::tools
