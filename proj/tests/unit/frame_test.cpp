#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bvista/error.hpp"
#include "bvista/frame.hpp"

namespace bvista {
namespace {

TEST(FrameImage, ZeroFilledConstruction) {
  FrameImage f(4, 3, 3);
  EXPECT_EQ(f.width(), 4);
  EXPECT_EQ(f.height(), 3);
  EXPECT_EQ(f.channels(), 3);
  EXPECT_EQ(f.pixel_count(), 12u);
  EXPECT_EQ(f.data().size(), 36u);
  for (float v : f.data()) EXPECT_EQ(v, 0.0f);
}

TEST(FrameImage, InterleavedIndexing) {
  FrameImage f(2, 2, 3);
  f.at(1, 0, 2) = 7.0f;
  f.at(0, 1, 1) = 9.0f;
  EXPECT_EQ(f.data()[5], 7.0f);
  EXPECT_EQ(f.data()[7], 9.0f);
  EXPECT_EQ(f.row(1)[1], 9.0f);
}

TEST(FrameImage, RejectsBadShapes) {
  EXPECT_THROW(FrameImage(0, 3, 1), ArgumentError);
  EXPECT_THROW(FrameImage(3, -1, 1), ArgumentError);
  EXPECT_THROW(FrameImage(3, 3, 2), ArgumentError);
  EXPECT_THROW(FrameImage(3, 3, 4), ArgumentError);
}

TEST(FrameImage, RejectsBadData) {
  EXPECT_THROW(FrameImage(2, 2, 1, {1, 2, 3}), ArgumentError);
  EXPECT_THROW(FrameImage(2, 1, 1, {1.0f, 256.0f}), ArgumentError);
  EXPECT_THROW(FrameImage(2, 1, 1, {-0.5f, 1.0f}), ArgumentError);
  EXPECT_THROW(FrameImage(2, 1, 1, {std::numeric_limits<float>::quiet_NaN(), 1.0f}),
               ArgumentError);
  EXPECT_NO_THROW(FrameImage(2, 1, 1, {0.0f, 255.0f}));
}

TEST(FrameImage, ClampToByteRange) {
  FrameImage f(3, 1, 1);
  f.at(0, 0) = -4.0f;
  f.at(1, 0) = 300.0f;
  f.at(2, 0) = 12.5f;
  clamp_to_byte_range(f);
  EXPECT_EQ(f.at(0, 0), 0.0f);
  EXPECT_EQ(f.at(1, 0), 255.0f);
  EXPECT_EQ(f.at(2, 0), 12.5f);
}

TEST(FrameImage, EqualityComparesContents) {
  FrameImage a(2, 2, 1), b(2, 2, 1);
  EXPECT_EQ(a, b);
  b.at(1, 1) = 1.0f;
  EXPECT_NE(a, b);
}

}  // namespace
}  // namespace bvista
