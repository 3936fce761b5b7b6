#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bvista/error.hpp"
#include "bvista/temporal.hpp"
#include "synthetic.hpp"

namespace bvista {
namespace {

using Points = std::vector<std::vector<double>>;

CurvatureSeries curvature(Points pts) {
  return trajectory_curvature({std::move(pts), PerceptualDomain::Lgn});
}

TEST(AngleBetween, ExactCases) {
  const std::vector<double> x{1, 0, 0}, y{0, 2, 0}, neg{-3, 0, 0};
  EXPECT_EQ(angle_between(x, x), 0.0);
  EXPECT_NEAR(angle_between(x, y), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(angle_between(x, neg), std::numbers::pi, 1e-15);
  EXPECT_THROW(angle_between(x, std::vector<double>{0, 0, 0}), DegenerateError);
  EXPECT_THROW(angle_between(x, std::vector<double>{1, 0}), ArgumentError);
}

TEST(AngleBetween, AccurateForTinyAngles) {
  const double eps = 1e-10;
  const std::vector<double> a{1, 0}, b{std::cos(eps), std::sin(eps)};
  EXPECT_NEAR(angle_between(a, b), eps, 1e-20);
}

TEST(TrajectoryCurvature, CollinearAndRightAngle) {
  const auto straight = curvature({{0, 0}, {1, 1}, {3, 3}, {4, 4}});
  ASSERT_EQ(straight.values.size(), 2u);
  for (double v : straight.values) EXPECT_NEAR(v, 0.0, 1e-12);

  const auto corner = curvature({{0, 0}, {1, 0}, {1, 1}});
  ASSERT_EQ(corner.values.size(), 1u);
  EXPECT_NEAR(corner.values[0], std::numbers::pi / 2, 1e-12);
  EXPECT_EQ(corner.positions, (std::vector<std::size_t>{1}));
}

TEST(TrajectoryCurvature, MatchesArccosOracle) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    Points pts(6, std::vector<double>(5));
    for (auto& p : pts)
      for (double& v : p) v = g(rng);
    const auto series = curvature(pts);
    const auto oracle = testing::arccos_curvatures(pts);
    ASSERT_EQ(series.values.size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(series.values[i], oracle[i], 1e-9);
  }
}

TEST(TrajectoryCurvature, SkipsAndCountsStaticTriplets) {
  // Points 1 and 2 coincide: triplets centred at 1 and 2 both involve the
  // zero difference.
  const auto s = curvature({{0, 0}, {1, 0}, {1, 0}, {1, 1}, {2, 1}});
  EXPECT_EQ(s.degenerate_count, 2u);
  ASSERT_EQ(s.values.size(), 1u);
  EXPECT_EQ(s.positions[0], 3u);
  EXPECT_NEAR(s.values[0], std::numbers::pi / 2, 1e-12);

  const auto frozen = curvature({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
  EXPECT_TRUE(frozen.empty());
  EXPECT_EQ(frozen.degenerate_count, 2u);
  EXPECT_TRUE(std::isnan(frozen.mean()));
}

TEST(TrajectoryCurvature, RejectsBadTrajectories) {
  EXPECT_THROW(curvature({{0}, {1}}), ArgumentError);
  EXPECT_THROW(curvature({{0, 0}, {1}, {2, 2}}), ArgumentError);
  EXPECT_THROW(curvature({{0, 0}, {1, NAN}, {2, 2}}), ArgumentError);
}

TEST(CurvatureAccumulator, StreamingEqualsBatch) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  Points pts(20, std::vector<double>(7));
  for (auto& p : pts)
    for (double& v : p) v = g(rng);
  pts[8] = pts[7];
  CurvatureAccumulator acc;
  for (const auto& p : pts) acc.push(p);
  EXPECT_EQ(acc.points_seen(), 20u);
  const auto streamed = std::move(acc).finish();
  const auto batch = curvature(pts);
  EXPECT_EQ(streamed.values, batch.values);
  EXPECT_EQ(streamed.positions, batch.positions);
  EXPECT_EQ(streamed.degenerate_count, 2u);

  CurvatureAccumulator short_acc;
  short_acc.push({1.0});
  short_acc.push({2.0});
  EXPECT_THROW(std::move(short_acc).finish(), ArgumentError);
}

TEST(TpqiScore, LogMeanAverage) {
  CurvatureSeries lgn, v1;
  lgn.values = {0.2, 0.4};
  v1.values = {1.0};
  const auto s = tpqi_score(lgn, v1);
  EXPECT_NEAR(s.value, (std::log(0.3) + std::log(1.0)) / 2, 1e-15);
  EXPECT_FALSE(s.degenerate);

  const auto floored = tpqi_score(CurvatureSeries{}, v1);
  EXPECT_TRUE(floored.degenerate);
  EXPECT_NEAR(floored.value, std::log(1e-8) / 2, 1e-12);

  CurvatureSeries zeros;
  zeros.values = {0.0, 0.0};
  const auto tiny = tpqi_score(zeros, zeros);
  EXPECT_FALSE(tiny.degenerate);
  EXPECT_NEAR(tiny.value, std::log(1e-8), 1e-12);
}

TEST(TemporalIndex, LowerCurvatureMapsHigher) {
  const CorpusStats stats{-1.0, 0.5, "tpqi", 8};
  EXPECT_NEAR(temporal_index({-1.0, false}, stats), 0.5, 1e-15);
  EXPECT_GT(temporal_index({-2.0, false}, stats), 0.5);
  EXPECT_THROW(temporal_index({-1.0, false}, CorpusStats{}), DegenerateError);
}

TEST(AnalyzeTemporal, WorkerCountDoesNotChangeResults) {
  const auto clip = testing::panning_clip(9, 64, 48, 2, 3);
  const auto serial = analyze_temporal(clip, 1);
  const auto parallel = analyze_temporal(clip, 3);
  EXPECT_EQ(serial.lgn.values, parallel.lgn.values);
  EXPECT_EQ(serial.v1.values, parallel.v1.values);
  EXPECT_EQ(serial.tpqi.value, parallel.tpqi.value);
  EXPECT_EQ(serial.lgn.values.size(), 7u);
}

TEST(AnalyzeTemporal, StaticClipIsFloored) {
  const auto frame = testing::procedural_texture(48, 32, 1);
  const std::vector<FrameImage> clip(5, frame);
  const auto t = analyze_temporal(clip);
  EXPECT_TRUE(t.lgn.empty());
  EXPECT_TRUE(t.tpqi.degenerate);
  EXPECT_EQ(t.v1.degenerate_count, 3u);
  EXPECT_THROW(analyze_temporal(std::vector<FrameImage>(2, frame)), ArgumentError);
}

}  // namespace
}  // namespace bvista
