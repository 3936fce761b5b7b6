#include "bvista/embedding.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bvista/error.hpp"

namespace bvista {

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("embedding must not be empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("embedding contains non-finite values");
  }
}

double EmbeddingVector::norm() const noexcept {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

std::string prompt_key(std::string_view text) {
  std::string out;
  bool in_space = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back('_');
    in_space = false;
    out.push_back(ch);
  }
  return out;
}

std::map<std::string, EmbeddingVector> read_embedding_fixtures(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open embedding fixtures " + path.string());
  std::map<std::string, EmbeddingVector> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string id;
    long long dim = 0;
    if (!(ls >> id >> dim) || dim < 1) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected `id D v1 ... vD`");
    }
    std::vector<double> values(static_cast<std::size_t>(dim));
    for (auto& v : values) {
      if (!(ls >> v)) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": fewer than " + std::to_string(dim) + " values");
      }
    }
    std::string extra;
    if (ls >> extra) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": more than " + std::to_string(dim) + " values");
    }
    if (!out.emplace(id, EmbeddingVector(std::move(values))).second) {
      throw FormatError(path.string() + ": duplicate id " + id);
    }
  }
  return out;
}

void write_embedding_fixtures(const std::filesystem::path& path,
                              const std::map<std::string, EmbeddingVector>& records) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << std::setprecision(17);
  for (const auto& [id, vec] : records) {
    out << id << ' ' << vec.dimension();
    for (double v : vec.values()) out << ' ' << v;
    out << '\n';
  }
}

FixtureEmbeddingProvider::FixtureEmbeddingProvider(const std::filesystem::path& path)
    : FixtureEmbeddingProvider(read_embedding_fixtures(path)) {}

FixtureEmbeddingProvider::FixtureEmbeddingProvider(
    std::map<std::string, EmbeddingVector> records)
    : records_(std::move(records)) {
  if (records_.empty()) throw EmptyInputError("embedding fixture set is empty");
  dimension_ = records_.begin()->second.dimension();
  for (const auto& [id, vec] : records_) {
    if (vec.dimension() != dimension_) {
      throw FormatError("fixture " + id + " has dimension " +
                        std::to_string(vec.dimension()) + ", expected " +
                        std::to_string(dimension_));
    }
  }
}

const EmbeddingVector& FixtureEmbeddingProvider::lookup(const std::string& id) const {
  auto it = records_.find(id);
  if (it == records_.end()) throw FormatError("no fixture embedding for id " + id);
  return it->second;
}

EmbeddingVector FixtureEmbeddingProvider::embed_image(const FrameImage&,
                                                      const ImageKey& key) const {
  return lookup(key.str());
}

EmbeddingVector FixtureEmbeddingProvider::embed_text(std::string_view text) const {
  return lookup(prompt_key(text));
}

}  // namespace bvista
