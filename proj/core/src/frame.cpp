#include "bvista/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bvista/error.hpp"

namespace bvista {
namespace {

void check_shape(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw ArgumentError("frame dimensions must be positive, got " +
                        std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw ArgumentError("frame must have 1 or 3 channels, got " +
                        std::to_string(channels));
  }
}

}  // namespace

FrameImage::FrameImage(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), 0.0f);
}

FrameImage::FrameImage(int width, int height, int channels,
                       std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw ArgumentError("frame data length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(width) + "x" +
                        std::to_string(height) + "x" + std::to_string(channels));
  }
  for (float v : data_) {
    if (!std::isfinite(v) || v < 0.0f || v > 255.0f) {
      throw ArgumentError("frame samples must be finite and within [0, 255]");
    }
  }
}

void clamp_to_byte_range(FrameImage& frame) noexcept {
  for (float& v : frame.data()) v = std::clamp(v, 0.0f, 255.0f);
}

}  // namespace bvista
