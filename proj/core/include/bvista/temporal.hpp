#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bvista/aggregation.hpp"
#include "bvista/frame.hpp"
#include "bvista/perceptual_transform.hpp"

namespace bvista {

/// Norm below which a frame-to-frame difference counts as static.
inline constexpr double kCurvatureEpsilon = 1e-8;
/// Floor applied to mean curvatures before the logarithm.
inline constexpr double kTpqiFloor = 1e-8;

/// Ordered response vectors of one video in one perceptual domain.
struct PerceptualTrajectory {
  std::vector<std::vector<double>> points;
  PerceptualDomain domain = PerceptualDomain::Lgn;
};

/// Turning angles (radians, [0, pi]) at each interior point whose adjacent
/// differences are both non-degenerate. `positions` holds the interior
/// point index j (1..M-2) of each value.
struct CurvatureSeries {
  std::vector<double> values;
  std::vector<std::size_t> positions;
  std::size_t degenerate_count = 0;

  bool empty() const noexcept { return values.empty(); }
  /// Arithmetic mean of values; NaN when empty.
  double mean() const noexcept;
};

/// Angle between two vectors, computed as
/// 2 atan2(| |b| a - |a| b |, | |b| a + |a| b |), which stays accurate near
/// 0 and pi. Vectors must have equal, non-zero length.
double angle_between(std::span<const double> a, std::span<const double> b);

/// Throws ArgumentError when M < 3, points differ in dimension or contain
/// non-finite values.
CurvatureSeries trajectory_curvature(const PerceptualTrajectory& trajectory);

/// Streaming form of trajectory_curvature: keeps only the last point and
/// difference, so memory is independent of the video length.
class CurvatureAccumulator {
 public:
  void push(std::vector<double> point);
  std::size_t points_seen() const noexcept { return seen_; }
  /// Throws ArgumentError when fewer than 3 points were pushed.
  CurvatureSeries finish() &&;

 private:
  std::vector<double> last_point_;
  std::vector<double> last_diff_;
  bool last_diff_degenerate_ = true;
  std::size_t seen_ = 0;
  CurvatureSeries series_;
};

struct RawTpqiScore {
  double value = 0.0;
  /// True when either domain had no usable triplet and was floored.
  bool degenerate = false;
};

/// (ln max(mean C_V1, floor) + ln max(mean C_LGN, floor)) / 2. An empty
/// series takes the floor and sets the degenerate flag.
RawTpqiScore tpqi_score(const CurvatureSeries& lgn, const CurvatureSeries& v1);

/// 1 / (1 + e^z) with z = (raw - mean) / std. Throws DegenerateError on
/// invalid stats.
double temporal_index(const RawTpqiScore& raw, const CorpusStats& stats);

struct TemporalAnalysis {
  CurvatureSeries lgn;
  CurvatureSeries v1;
  RawTpqiScore tpqi;
};

/// Runs both transforms over every frame of the temporal view (responses
/// computed `workers` frames at a time, 0 = hardware concurrency) and
/// streams them into the curvature accumulators.
TemporalAnalysis analyze_temporal(std::span<const FrameImage> temporal_view,
                                  const PerceptualDomainTransform& lgn,
                                  const PerceptualDomainTransform& v1,
                                  std::size_t workers = 1);

/// Default LGN and V1 transforms.
TemporalAnalysis analyze_temporal(std::span<const FrameImage> temporal_view,
                                  std::size_t workers = 1);

}  // namespace bvista
