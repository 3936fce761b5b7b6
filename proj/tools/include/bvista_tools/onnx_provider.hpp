#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <string>

#include "bvista/embedding.hpp"

namespace bvista::tools {

/// Sidecar metadata written next to an exported image encoder
/// (`<model>.json`).
struct EncoderMetadata {
  std::size_t dimension = 0;
  int input_size = 224;
  std::array<float, 3> mean{};  // per RGB channel, on [0, 1]
  std::array<float, 3> std{};
  /// Prompt embedding fixture file; relative paths are resolved against the
  /// metadata file's directory.
  std::filesystem::path text_embeddings;
};

/// Throws FormatError on missing or inconsistent fields.
EncoderMetadata read_encoder_metadata(const std::filesystem::path& path);

/// Image embeddings from an ONNX graph run by OpenCV's dnn module; text
/// embeddings from the precomputed prompt fixture named in the metadata.
/// The network is not reentrant, so callers serialise image requests.
class OnnxEmbeddingProvider final : public EmbeddingProvider {
 public:
  /// `model` is the .onnx file; metadata is read from `model` with the
  /// extension replaced by .json unless given explicitly.
  explicit OnnxEmbeddingProvider(const std::filesystem::path& model,
                                 const std::filesystem::path& metadata = {});
  ~OnnxEmbeddingProvider() override;

  EmbeddingVector embed_image(const FrameImage& frame, const ImageKey& key) const override;
  EmbeddingVector embed_text(std::string_view text) const override;
  std::size_t dimension() const noexcept override { return meta_.dimension; }
  bool reentrant() const noexcept override { return false; }

  const EncoderMetadata& metadata() const noexcept { return meta_; }

 private:
  struct Net;
  EncoderMetadata meta_;
  std::unique_ptr<Net> net_;
  std::unique_ptr<FixtureEmbeddingProvider> text_;
};

}  // namespace bvista::tools
