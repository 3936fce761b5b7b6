#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bvista/frame.hpp"

namespace bvista {

/// Feature vector from a visual or textual encoder. Stored as read (32-bit
/// reals); never pre-normalised.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  /// Throws ArgumentError on empty or non-finite input.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dimension() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double norm() const noexcept;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

/// Identifies an aesthetic-view frame for providers that serve precomputed
/// embeddings: `<video_id>/<sample_index>`.
struct ImageKey {
  std::string video_id;
  std::size_t index = 0;

  std::string str() const { return video_id + "/" + std::to_string(index); }
};

/// Whitespace-free record id for a prompt: whitespace runs become '_'.
std::string prompt_key(std::string_view text);

/// Source of visual and textual embeddings. Implementations must be
/// deterministic with a fixed output dimension.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  /// Embeds one 224x224 RGB aesthetic frame. Runtime providers use the
  /// pixels; fixture providers look the key up.
  virtual EmbeddingVector embed_image(const FrameImage& frame,
                                      const ImageKey& key) const = 0;
  virtual EmbeddingVector embed_text(std::string_view text) const = 0;
  virtual std::size_t dimension() const noexcept = 0;
  /// False when concurrent calls are unsafe; callers then serialise.
  virtual bool reentrant() const noexcept { return true; }
};

/// Records of the fixture embedding file: `id D v1 ... vD` per line.
/// Blank lines and lines starting with '#' are skipped.
std::map<std::string, EmbeddingVector> read_embedding_fixtures(
    const std::filesystem::path& path);

void write_embedding_fixtures(const std::filesystem::path& path,
                              const std::map<std::string, EmbeddingVector>& records);

/// Serves embeddings from a fixture file. Image lookups use ImageKey::str(),
/// text lookups use prompt_key(). Missing ids throw FormatError.
class FixtureEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit FixtureEmbeddingProvider(const std::filesystem::path& path);
  explicit FixtureEmbeddingProvider(std::map<std::string, EmbeddingVector> records);

  EmbeddingVector embed_image(const FrameImage& frame, const ImageKey& key) const override;
  EmbeddingVector embed_text(std::string_view text) const override;
  std::size_t dimension() const noexcept override { return dimension_; }

  std::size_t size() const noexcept { return records_.size(); }

 private:
  const EmbeddingVector& lookup(const std::string& id) const;

  std::map<std::string, EmbeddingVector> records_;
  std::size_t dimension_ = 0;
};

}  // namespace bvista
