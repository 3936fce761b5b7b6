#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bvista/error.hpp"
#include "bvista/video_ingest.hpp"

namespace bvista {
namespace {

FrameImage gradient(int w, int h, int channels, float offset = 0.0f) {
  FrameImage f(w, h, channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c)
        f.at(x, y, c) = std::fmod(offset + 3.0f * x + 5.0f * y + 40.0f * c, 255.0f);
  return f;
}

TEST(SampleUniformIndices, CentredFloorRule) {
  EXPECT_EQ(sample_uniform_indices(10, 4), (std::vector<std::size_t>{1, 3, 6, 8}));
  EXPECT_EQ(sample_uniform_indices(32, 32).back(), 31u);
  EXPECT_EQ(sample_uniform_indices(1, 3), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(SampleUniformIndices, RepeatsFramesForShortVideos) {
  // 3 frames, 8 samples: floor((i + 0.5) * 3 / 8).
  EXPECT_EQ(sample_uniform_indices(3, 8),
            (std::vector<std::size_t>{0, 0, 0, 1, 1, 2, 2, 2}));
}

TEST(SampleUniformIndices, IndicesAreSortedAndInRange) {
  for (std::size_t total : {1u, 7u, 31u, 250u, 999u}) {
    for (std::size_t samples : {1u, 5u, 32u, 64u}) {
      const auto idx = sample_uniform_indices(total, samples);
      ASSERT_EQ(idx.size(), samples);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        EXPECT_LT(idx[i], total);
        if (i > 0) EXPECT_LE(idx[i - 1], idx[i]);
      }
    }
  }
}

TEST(SampleUniformIndices, RejectsZeroCounts) {
  EXPECT_THROW(sample_uniform_indices(0, 4), EmptyInputError);
  EXPECT_THROW(sample_uniform_indices(4, 0), EmptyInputError);
}

TEST(SamplePerSecondIndices, OneFramePerSecond) {
  EXPECT_EQ(sample_per_second_indices(25, 10.0), (std::vector<std::size_t>{0, 10, 20}));
  EXPECT_EQ(sample_per_second_indices(30, 29.97), (std::vector<std::size_t>{0, 29}));
  EXPECT_EQ(sample_per_second_indices(5, 30.0), (std::vector<std::size_t>{0}));
  EXPECT_THROW(sample_per_second_indices(0, 30.0), EmptyInputError);
  EXPECT_THROW(sample_per_second_indices(10, 0.0), ArgumentError);
}

TEST(RgbToLuma, Bt601Weights) {
  FrameImage f(1, 1, 3);
  f.at(0, 0, 0) = 100.0f;
  f.at(0, 0, 1) = 50.0f;
  f.at(0, 0, 2) = 200.0f;
  const FrameImage y = rgb_to_luma(f);
  ASSERT_EQ(y.channels(), 1);
  EXPECT_NEAR(y.at(0, 0), 82.05f, 1e-4f);
  EXPECT_THROW(rgb_to_luma(FrameImage(2, 2, 1)), ArgumentError);
}

TEST(ChannelConversion, ToRgbAndToLumaAreIdempotent) {
  const FrameImage luma = gradient(4, 3, 1);
  const FrameImage rgb = to_rgb(luma);
  ASSERT_EQ(rgb.channels(), 3);
  EXPECT_EQ(rgb.at(2, 1, 0), luma.at(2, 1));
  EXPECT_EQ(rgb.at(2, 1, 2), luma.at(2, 1));
  EXPECT_EQ(to_rgb(rgb), rgb);
  EXPECT_EQ(to_luma(luma), luma);
  EXPECT_NEAR(to_luma(rgb).at(3, 2), luma.at(3, 2), 1e-4f);
}

TEST(ResizeBicubic, ClampsOvershoot) {
  FrameImage step(4, 1, 1);
  step.at(2, 0) = 255.0f;
  step.at(3, 0) = 255.0f;
  const FrameImage up = resize_bicubic(step, 16, 1);
  bool saw_max = false;
  for (float v : up.data()) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 255.0f);
    saw_max = saw_max || v == 255.0f;
  }
  EXPECT_TRUE(saw_max);
}

TEST(ResizeBicubic, KeepsChannelsAndRejectsBadTargets) {
  const FrameImage rgb = gradient(20, 10, 3);
  const FrameImage small = resize_bicubic(rgb, 7, 5);
  EXPECT_EQ(small.width(), 7);
  EXPECT_EQ(small.height(), 5);
  EXPECT_EQ(small.channels(), 3);
  EXPECT_THROW(resize_bicubic(rgb, 0, 5), ArgumentError);
}

TEST(MakeViews, ProducesThreeViews) {
  std::vector<FrameImage> frames;
  for (int i = 0; i < 20; ++i) frames.push_back(gradient(40, 30, 3, static_cast<float>(i)));
  ViewConfig config;
  config.aesthetic_frames = 4;
  config.aesthetic_size = 16;
  config.temporal_width = 24;
  config.temporal_height = 12;
  const VideoViews v = make_views(frames, 10.0, config);

  ASSERT_EQ(v.aesthetic.size(), 4u);
  EXPECT_EQ(v.aesthetic_indices, (std::vector<std::size_t>{2, 7, 12, 17}));
  EXPECT_EQ(v.aesthetic[0].width(), 16);
  EXPECT_EQ(v.aesthetic[0].channels(), 3);

  EXPECT_EQ(v.spatial_indices, (std::vector<std::size_t>{0, 10}));
  ASSERT_EQ(v.spatial.size(), 2u);
  EXPECT_EQ(v.spatial[1], frames[10]);

  ASSERT_EQ(v.temporal.size(), 20u);
  EXPECT_EQ(v.temporal[0].width(), 24);
  EXPECT_EQ(v.temporal[0].height(), 12);
  EXPECT_EQ(v.temporal[0].channels(), 1);

  EXPECT_DOUBLE_EQ(v.fps, 10.0);
  EXPECT_DOUBLE_EQ(v.duration_seconds, 2.0);
  EXPECT_EQ(v.native_frame_count, 20u);
}

TEST(MakeViews, PortraitSwapsTemporalSize) {
  std::vector<FrameImage> frames(3, gradient(10, 20, 1));
  ViewConfig config;
  config.aesthetic_frames = 2;
  config.aesthetic_size = 8;
  config.temporal_width = 16;
  config.temporal_height = 9;
  const VideoViews v = make_views(frames, 30.0, config);
  EXPECT_EQ(v.temporal[0].width(), 9);
  EXPECT_EQ(v.temporal[0].height(), 16);
}

TEST(ViewBuilder, StreamingMatchesBatch) {
  std::vector<FrameImage> frames;
  for (int i = 0; i < 9; ++i) frames.push_back(gradient(12, 8, 3, 10.0f * i));
  ViewConfig config{5, 8, 6, 4};
  ViewBuilder builder(frames.size(), 4.0, config);
  for (const auto& f : frames) builder.push(f);
  EXPECT_EQ(builder.frames_seen(), 9u);
  const VideoViews streamed = std::move(builder).finish();
  const VideoViews batch = make_views(frames, 4.0, config);
  EXPECT_EQ(streamed.aesthetic, batch.aesthetic);
  EXPECT_EQ(streamed.spatial, batch.spatial);
  EXPECT_EQ(streamed.temporal, batch.temporal);
}

TEST(ViewBuilder, FrameCountMismatch) {
  const FrameImage f = gradient(8, 8, 1);
  {
    ViewBuilder b(2, 10.0, {2, 4, 4, 4});
    b.push(f);
    EXPECT_THROW(std::move(b).finish(), ArgumentError);
  }
  {
    ViewBuilder b(1, 10.0, {2, 4, 4, 4});
    b.push(f);
    EXPECT_THROW(b.push(f), ArgumentError);
  }
  {
    ViewBuilder b(1, 10.0, {2, 4, 4, 4});
    EXPECT_THROW(std::move(b).finish(), EmptyInputError);
  }
  EXPECT_THROW(ViewBuilder(0, 10.0), EmptyInputError);
  EXPECT_THROW(make_views(std::vector<FrameImage>{}, 10.0), EmptyInputError);
}

}  // namespace
}  // namespace bvista
