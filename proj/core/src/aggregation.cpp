#include "bvista/aggregation.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bvista/error.hpp"

namespace bvista {

bool CorpusStats::valid() const noexcept {
  return std::isfinite(mean) && std::isfinite(std) && std > 0.0 && sample_count >= 2;
}

CorpusStats compute_corpus_stats(std::span<const double> raw_values,
                                 std::string metric_tag) {
  if (raw_values.size() < 2) {
    throw InsufficientDataError("corpus statistics need at least 2 values, got " +
                                std::to_string(raw_values.size()));
  }
  double sum = 0.0;
  for (double v : raw_values) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite raw metric value");
    sum += v;
  }
  const auto n = static_cast<double>(raw_values.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : raw_values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) {
    throw DegenerateError("all " + std::to_string(raw_values.size()) + " values of " +
                          (metric_tag.empty() ? std::string("metric") : metric_tag) +
                          " are equal; cannot normalise");
  }
  return {mean, sd, std::move(metric_tag), raw_values.size()};
}

AggregationStrategy parse_strategy(std::string_view name) {
  if (name == "sigmoid-add") return {Rescale::GaussianSigmoid, Combine::Addition};
  if (name == "sigmoid-mul") return {Rescale::GaussianSigmoid, Combine::Multiplication};
  if (name == "linear-add") return {Rescale::LinearNormalize, Combine::Addition};
  if (name == "direct-add") return {Rescale::DirectRaw, Combine::Addition};
  throw ArgumentError("unknown aggregation strategy '" + std::string(name) + "'");
}

std::string strategy_name(const AggregationStrategy& s) {
  std::string r;
  switch (s.rescale) {
    case Rescale::GaussianSigmoid: r = "sigmoid"; break;
    case Rescale::LinearNormalize: r = "linear"; break;
    case Rescale::DirectRaw: r = "direct"; break;
  }
  return r + (s.combine == Combine::Addition ? "-add" : "-mul");
}

double rescale(double x, const CorpusStats& stats, Orientation orientation,
               Rescale strategy) {
  const double sign = orientation == Orientation::HigherBetter ? 1.0 : -1.0;
  if (strategy == Rescale::DirectRaw) return sign * x;
  if (!stats.valid()) {
    throw DegenerateError("invalid corpus statistics for '" + stats.metric_tag +
                          "' (std must be > 0)");
  }
  const double z = (x - stats.mean) / stats.std;
  if (strategy == Rescale::LinearNormalize) return sign * z;
  return 1.0 / (1.0 + std::exp(-sign * z));
}

double unified_index(double q_a, double q_s, double q_t, Combine combine) {
  return combine == Combine::Addition ? q_a + q_s + q_t : q_a * q_s * q_t;
}

void write_stats_file(const std::filesystem::path& path,
                      const std::map<std::string, CorpusStats>& stats) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write stats file " + path.string());
  out << std::setprecision(17);
  for (const auto& [tag, s] : stats) {
    out << tag << ' ' << s.mean << ' ' << s.std << ' ' << s.sample_count << '\n';
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

std::map<std::string, CorpusStats> read_stats_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open stats file " + path.string());
  std::map<std::string, CorpusStats> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    CorpusStats s;
    std::string extra;
    if (!(ls >> s.metric_tag >> s.mean >> s.std >> s.sample_count) || (ls >> extra)) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected `metric_tag mean std sample_count`");
    }
    if (!s.valid()) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": std must be > 0 and sample_count >= 2");
    }
    const std::string tag = s.metric_tag;
    out[tag] = std::move(s);
  }
  if (out.empty()) throw FormatError(path.string() + ": no statistics");
  return out;
}

namespace metric {
std::string differential_affinity(std::size_t pair_index) {
  return "da" + std::to_string(pair_index);
}
}  // namespace metric

}  // namespace bvista
