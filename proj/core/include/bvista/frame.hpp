#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bvista {

/// A single decoded picture: row-major, interleaved channels, intensities
/// on the [0, 255] scale stored as float.
class FrameImage {
 public:
  FrameImage() = default;

  /// Zero-filled frame. Throws ArgumentError on zero dimensions or a
  /// channel count other than 1 or 3.
  FrameImage(int width, int height, int channels);

  /// Takes ownership of `data`; validates length, finiteness and range.
  FrameImage(int width, int height, int channels, std::vector<float> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  float at(int x, int y, int c = 0) const noexcept {
    return data_[index(x, y, c)];
  }
  float& at(int x, int y, int c = 0) noexcept { return data_[index(x, y, c)]; }

  /// Row pointer for single-channel frames.
  const float* row(int y) const noexcept {
    return data_.data() + static_cast<std::size_t>(y) * width_ * channels_;
  }
  float* row(int y) noexcept {
    return data_.data() + static_cast<std::size_t>(y) * width_ * channels_;
  }

  friend bool operator==(const FrameImage&, const FrameImage&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

/// Clamp every sample into [0, 255].
void clamp_to_byte_range(FrameImage& frame) noexcept;

}  // namespace bvista
