#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace bvista {

/// Mean / population standard deviation of one raw metric over a corpus.
struct CorpusStats {
  double mean = 0.0;
  double std = 0.0;
  std::string metric_tag;
  std::size_t sample_count = 0;

  /// std > 0, finite, sample_count >= 2.
  bool valid() const noexcept;
};

/// Throws InsufficientDataError for fewer than 2 values and DegenerateError
/// when all values are equal (zero spread).
CorpusStats compute_corpus_stats(std::span<const double> raw_values,
                                 std::string metric_tag = {});

enum class Orientation { HigherBetter, LowerBetter };

enum class Rescale { DirectRaw, LinearNormalize, GaussianSigmoid };
enum class Combine { Addition, Multiplication };

struct AggregationStrategy {
  Rescale rescale = Rescale::GaussianSigmoid;
  Combine combine = Combine::Addition;

  friend bool operator==(const AggregationStrategy&, const AggregationStrategy&) = default;
};

/// CLI names: sigmoid-add, sigmoid-mul, linear-add, direct-add.
AggregationStrategy parse_strategy(std::string_view name);
std::string strategy_name(const AggregationStrategy& strategy);

/// Maps a raw metric value onto the aggregation scale.
///   GaussianSigmoid: 1/(1+e^-z) (higher-better) or 1/(1+e^z) (lower-better)
///   LinearNormalize: z or -z
///   DirectRaw:       x or -x
/// with z = (x - mean) / std. Throws DegenerateError on invalid stats
/// unless the strategy is DirectRaw.
double rescale(double x, const CorpusStats& stats, Orientation orientation,
               Rescale strategy);

/// Addition: a + s + t. Multiplication: a * s * t.
double unified_index(double q_a, double q_s, double q_t, Combine combine);

/// Stats file: one `metric_tag mean std sample_count` line per metric.
void write_stats_file(const std::filesystem::path& path,
                      const std::map<std::string, CorpusStats>& stats);
std::map<std::string, CorpusStats> read_stats_file(const std::filesystem::path& path);

/// Metric tags used in stats files.
namespace metric {
inline constexpr std::string_view kNiqe = "niqe";
inline constexpr std::string_view kTpqi = "tpqi";
/// Differential affinity of prompt pair p is tagged "da<p>"; only used by
/// the LinearNormalize strategy.
std::string differential_affinity(std::size_t pair_index);
}  // namespace metric

}  // namespace bvista
