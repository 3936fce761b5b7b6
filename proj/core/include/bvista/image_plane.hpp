#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bvista/frame.hpp"

namespace bvista {

/// Single-channel double-precision grid used for intermediate signal
/// processing (MSCN fields, filter responses). Unlike FrameImage it has no
/// range restriction.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Plane() = default;
  Plane(int w, int h, double fill = 0.0)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  double& operator()(int x, int y) noexcept {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double operator()(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  std::size_t size() const noexcept { return values.size(); }
};

/// Channel 0 of a frame as a Plane. Throws ArgumentError for RGB frames.
Plane plane_from_luma(const FrameImage& frame);

/// Normalised 1-D Gaussian taps, radius = size / 2.
std::vector<double> gaussian_kernel(int size, double sigma);

/// Separable correlation with the same 1-D kernel along both axes,
/// replicate (clamp-to-edge) borders.
Plane filter_separable(const Plane& in, std::span<const double> kernel);

/// Separable correlation with distinct horizontal and vertical kernels.
Plane filter_separable(const Plane& in, std::span<const double> kx,
                       std::span<const double> ky);

/// Mean over a (2r+1) x (2r+1) window, replicate borders.
Plane box_mean(const Plane& in, int radius);

/// Cubic-convolution resampling (a = -0.5) with antialiasing on downscale
/// and mirrored borders. No clamping.
Plane resample_cubic(const Plane& in, int target_w, int target_h);

/// Cubic convolution kernel with a = -0.5.
double cubic_kernel(double x) noexcept;

}  // namespace bvista
