#include "bvista/semantic_affinity.hpp"

#include <cmath>
#include <fstream>

#include "bvista/error.hpp"

namespace bvista {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \r\n");
  return s.substr(first, last - first + 1);
}

double logistic(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::vector<PromptText> default_prompt_texts() {
  return {{"high quality", "low quality"}, {"a good photo", "a bad photo"}};
}

std::vector<PromptText> read_prompt_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open prompt file " + path.string());
  std::vector<PromptText> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos || t.find('\t', tab + 1) != std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected exactly one tab between positive and negative prompt");
    }
    PromptText pair{trim(t.substr(0, tab)), trim(t.substr(tab + 1))};
    if (pair.positive.empty() || pair.negative.empty()) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": empty prompt");
    }
    out.push_back(std::move(pair));
  }
  if (out.empty()) throw FormatError(path.string() + ": no prompt pairs");
  return out;
}

void write_prompt_file(const std::filesystem::path& path, std::span<const PromptText> pairs) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  for (const auto& p : pairs) out << p.positive << '\t' << p.negative << '\n';
}

std::vector<PromptPair> embed_prompts(const EmbeddingProvider& provider,
                                      std::span<const PromptText> texts) {
  if (texts.empty()) throw EmptyInputError("no prompt pairs");
  std::vector<PromptPair> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    if (t.positive.empty() || t.negative.empty()) {
      throw ArgumentError("prompt texts must be non-empty");
    }
    PromptPair pair{t.positive, t.negative, provider.embed_text(t.positive),
                    provider.embed_text(t.negative)};
    if (pair.positive_embedding.dimension() != pair.negative_embedding.dimension()) {
      throw ArgumentError("prompt pair embeddings differ in dimension");
    }
    out.push_back(std::move(pair));
  }
  return out;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw ArgumentError("embedding dimensions differ: " + std::to_string(a.dimension()) +
                        " vs " + std::to_string(b.dimension()));
  }
  const auto x = a.values();
  const auto y = b.values();
  double dot = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 || yy == 0.0) throw DegenerateError("zero-norm embedding");
  const double c = dot / (std::sqrt(xx) * std::sqrt(yy));
  return std::clamp(c, -1.0, 1.0);
}

double affinity(std::span<const EmbeddingVector> frame_embeddings,
                const EmbeddingVector& text_embedding) {
  if (frame_embeddings.empty()) throw EmptyInputError("no frame embeddings");
  double sum = 0.0;
  for (const auto& f : frame_embeddings) sum += cosine_similarity(f, text_embedding);
  return sum / static_cast<double>(frame_embeddings.size());
}

double differential_affinity(std::span<const EmbeddingVector> frame_embeddings,
                             const PromptPair& pair) {
  return affinity(frame_embeddings, pair.positive_embedding) -
         affinity(frame_embeddings, pair.negative_embedding);
}

double semantic_index(std::span<const double> differential_affinities,
                      double logit_scale) {
  if (differential_affinities.empty()) throw ArgumentError("no prompt pairs");
  if (!(logit_scale > 0.0) || !std::isfinite(logit_scale)) {
    throw ArgumentError("logit scale must be positive and finite");
  }
  double q = 0.0;
  for (double da : differential_affinities) q += logistic(logit_scale * da);
  return q;
}

double semantic_index(std::span<const EmbeddingVector> frame_embeddings,
                      std::span<const PromptPair> pairs, double logit_scale) {
  if (pairs.empty()) throw ArgumentError("no prompt pairs");
  std::vector<double> das;
  das.reserve(pairs.size());
  for (const auto& p : pairs) das.push_back(differential_affinity(frame_embeddings, p));
  return semantic_index(das, logit_scale);
}

}  // namespace bvista
