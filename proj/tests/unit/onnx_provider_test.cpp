#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "bvista/error.hpp"
#include "bvista_tools/onnx_provider.hpp"
#include "synthetic.hpp"

namespace bvista::tools {
namespace {

const std::filesystem::path kDir = bvista::testing::data_dir() / "onnx";

FrameImage probe(const std::string& name) {
  FrameImage f(224, 224, 3);
  for (int y = 0; y < 224; ++y) {
    for (int x = 0; x < 224; ++x) {
      if (name == "ramp") {
        f.at(x, y, 0) = static_cast<float>((3 * x + 5 * y) % 256);
        f.at(x, y, 1) = static_cast<float>((7 * x + y) % 256);
        f.at(x, y, 2) = static_cast<float>((x * y) % 256);
      } else {
        for (int c = 0; c < 3; ++c) f.at(x, y, c) = 128.0f;
      }
    }
  }
  return f;
}

std::vector<double> golden(const std::string& name) {
  std::ifstream in(kDir / "golden.txt");
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string id;
    row >> id;
    if (id != name) continue;
    std::vector<double> v;
    for (double x; row >> x;) v.push_back(x);
    return v;
  }
  return {};
}

TEST(EncoderMetadata, ReadsSidecar) {
  const EncoderMetadata m = read_encoder_metadata(kDir / "tiny_encoder.json");
  EXPECT_EQ(m.dimension, 8u);
  EXPECT_EQ(m.input_size, 224);
  EXPECT_FLOAT_EQ(m.mean[0], 0.48145466f);
  EXPECT_FLOAT_EQ(m.std[2], 0.27577711f);
  EXPECT_EQ(m.text_embeddings, kDir / "prompts.emb");
}

TEST(EncoderMetadata, RejectsBadSidecars) {
  bvista::testing::TempDir dir;
  std::ofstream(dir / "a.json") << "[]";
  EXPECT_THROW(read_encoder_metadata(dir / "a.json"), FormatError);
  std::ofstream(dir / "b.json") << R"({"dimension": 8, "input_size": 224})";
  EXPECT_THROW(read_encoder_metadata(dir / "b.json"), FormatError);
  std::ofstream(dir / "c.json") << R"({"dimension": 8, "input_size": 224, "mean": [0,0,0],
      "std": [1, 0, 1], "text_embeddings": "p.emb"})";
  EXPECT_THROW(read_encoder_metadata(dir / "c.json"), FormatError);
  EXPECT_THROW(read_encoder_metadata(dir / "missing.json"), FormatError);
}

// Goldens are the exporting framework's own outputs on the same inputs.
TEST(OnnxEmbeddingProvider, MatchesExporterOutputs) {
  const OnnxEmbeddingProvider provider(kDir / "tiny_encoder.onnx");
  EXPECT_EQ(provider.dimension(), 8u);
  EXPECT_FALSE(provider.reentrant());
  for (const std::string name : {"ramp", "flat"}) {
    const auto expected = golden(name);
    ASSERT_EQ(expected.size(), 8u);
    const EmbeddingVector v = provider.embed_image(probe(name), {"x", 0});
    ASSERT_EQ(v.dimension(), 8u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(v.values()[i], expected[i], 1e-5) << name;
  }
}

TEST(OnnxEmbeddingProvider, ResizesAndServesText) {
  const OnnxEmbeddingProvider provider(kDir / "tiny_encoder.onnx");
  FrameImage grey(100, 60, 1);
  std::fill(grey.data().begin(), grey.data().end(), 128.0f);
  const EmbeddingVector a = provider.embed_image(grey, {"x", 0});
  const EmbeddingVector b = provider.embed_image(probe("flat"), {"x", 0});
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-5);
  EXPECT_EQ(provider.embed_text("high quality").dimension(), 8u);
  EXPECT_THROW(provider.embed_text("blurry"), FormatError);
}

TEST(OnnxEmbeddingProvider, MissingOrMismatchedFiles) {
  bvista::testing::TempDir dir;
  EXPECT_THROW(OnnxEmbeddingProvider(dir / "none.onnx", kDir / "tiny_encoder.json"), FormatError);
  std::ofstream(dir / "wrong.json") << R"({"dimension": 4, "input_size": 224,
      "mean": [0,0,0], "std": [1,1,1], "text_embeddings": ")" +
                                           (kDir / "prompts.emb").string() + "\"}";
  EXPECT_THROW(OnnxEmbeddingProvider(kDir / "tiny_encoder.onnx", dir / "wrong.json"),
               FormatError);
}

}  // namespace
}  // namespace bvista::tools
