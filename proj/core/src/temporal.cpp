#include "bvista/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bvista/error.hpp"
#include "bvista/parallel.hpp"

namespace bvista {
namespace {

double norm(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

double CurvatureSeries::mean() const noexcept {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double angle_between(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("angle between vectors of different length");
  const double na = norm(a);
  const double nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw DegenerateError("angle with a zero vector");
  double diff = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] * nb;
    const double q = b[i] * na;
    diff += (p - q) * (p - q);
    sum += (p + q) * (p + q);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

void CurvatureAccumulator::push(std::vector<double> point) {
  if (point.empty()) throw ArgumentError("empty trajectory point");
  if (seen_ > 0 && point.size() != last_point_.size()) {
    throw ArgumentError("trajectory points differ in dimension");
  }
  if (!std::all_of(point.begin(), point.end(), [](double v) { return std::isfinite(v); })) {
    throw ArgumentError("trajectory point contains non-finite values");
  }
  if (seen_ > 0) {
    std::vector<double> diff(point.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = point[i] - last_point_[i];
    const bool degenerate = norm(diff) < kCurvatureEpsilon;
    if (seen_ >= 2) {
      if (degenerate || last_diff_degenerate_) {
        ++series_.degenerate_count;
      } else {
        series_.values.push_back(angle_between(last_diff_, diff));
        series_.positions.push_back(seen_ - 1);
      }
    }
    last_diff_ = std::move(diff);
    last_diff_degenerate_ = degenerate;
  }
  last_point_ = std::move(point);
  ++seen_;
}

CurvatureSeries CurvatureAccumulator::finish() && {
  if (seen_ < 3) {
    throw ArgumentError("curvature needs at least 3 frames, got " + std::to_string(seen_));
  }
  return std::move(series_);
}

CurvatureSeries trajectory_curvature(const PerceptualTrajectory& trajectory) {
  if (trajectory.points.size() < 3) {
    throw ArgumentError("curvature needs at least 3 points, got " +
                        std::to_string(trajectory.points.size()));
  }
  CurvatureAccumulator acc;
  for (const auto& p : trajectory.points) acc.push(p);
  return std::move(acc).finish();
}

RawTpqiScore tpqi_score(const CurvatureSeries& lgn, const CurvatureSeries& v1) {
  RawTpqiScore out;
  auto log_mean = [&](const CurvatureSeries& s) {
    if (s.empty()) {
      out.degenerate = true;
      return std::log(kTpqiFloor);
    }
    return std::log(std::max(s.mean(), kTpqiFloor));
  };
  out.value = (log_mean(v1) + log_mean(lgn)) / 2.0;
  return out;
}

double temporal_index(const RawTpqiScore& raw, const CorpusStats& stats) {
  return rescale(raw.value, stats, Orientation::LowerBetter, Rescale::GaussianSigmoid);
}

TemporalAnalysis analyze_temporal(std::span<const FrameImage> temporal_view,
                                  const PerceptualDomainTransform& lgn,
                                  const PerceptualDomainTransform& v1, std::size_t workers) {
  if (temporal_view.size() < 3) {
    throw ArgumentError("temporal analysis needs at least 3 frames, got " +
                        std::to_string(temporal_view.size()));
  }
  if (workers == 0) workers = default_worker_count();
  CurvatureAccumulator lgn_acc, v1_acc;
  std::vector<std::vector<double>> lgn_batch(workers), v1_batch(workers);
  for (std::size_t start = 0; start < temporal_view.size(); start += workers) {
    const std::size_t count = std::min(workers, temporal_view.size() - start);
    parallel_for(count, workers, [&](std::size_t i) {
      lgn_batch[i] = lgn.respond(temporal_view[start + i]);
      v1_batch[i] = v1.respond(temporal_view[start + i]);
    });
    for (std::size_t i = 0; i < count; ++i) {
      lgn_acc.push(std::move(lgn_batch[i]));
      v1_acc.push(std::move(v1_batch[i]));
    }
  }
  TemporalAnalysis out{std::move(lgn_acc).finish(), std::move(v1_acc).finish(), {}};
  out.tpqi = tpqi_score(out.lgn, out.v1);
  return out;
}

TemporalAnalysis analyze_temporal(std::span<const FrameImage> temporal_view,
                                  std::size_t workers) {
  static const LgnTransform lgn;
  static const V1Transform v1;
  return analyze_temporal(temporal_view, lgn, v1, workers);
}

}  // namespace bvista
