#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bvista/embedding.hpp"

namespace bvista {

/// An antonym prompt pair with its text embeddings.
struct PromptPair {
  std::string positive_text;
  std::string negative_text;
  EmbeddingVector positive_embedding;
  EmbeddingVector negative_embedding;
};

/// Text-only form of a pair, as stored in the prompt configuration file.
struct PromptText {
  std::string positive;
  std::string negative;
};

/// ("high quality", "low quality") and ("a good photo", "a bad photo").
std::vector<PromptText> default_prompt_texts();

/// One `positive<TAB>negative` pair per line; '#' comments and blank lines
/// are skipped. Throws FormatError on malformed lines or an empty file.
std::vector<PromptText> read_prompt_file(const std::filesystem::path& path);
void write_prompt_file(const std::filesystem::path& path, std::span<const PromptText> pairs);

/// Embeds each prompt once through `provider`.
std::vector<PromptPair> embed_prompts(const EmbeddingProvider& provider,
                                      std::span<const PromptText> texts);

/// Cosine similarity. Throws ArgumentError on dimension mismatch and
/// DegenerateError on a zero-norm vector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

/// Mean cosine similarity between every frame embedding and the text
/// embedding; in [-1, 1].
double affinity(std::span<const EmbeddingVector> frame_embeddings,
                const EmbeddingVector& text_embedding);

/// affinity(frames, positive) - affinity(frames, negative); in [-2, 2].
double differential_affinity(std::span<const EmbeddingVector> frame_embeddings,
                             const PromptPair& pair);

/// Sum over pairs of the logistic of the raw differential affinity (scaled
/// by `logit_scale`, default 1). In (0, P) for P pairs.
double semantic_index(std::span<const double> differential_affinities,
                      double logit_scale = 1.0);

double semantic_index(std::span<const EmbeddingVector> frame_embeddings,
                      std::span<const PromptPair> pairs, double logit_scale = 1.0);

}  // namespace bvista
