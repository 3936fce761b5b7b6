#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bvista/frame.hpp"

namespace bvista {

/// Sizes and counts for the three per-branch views.
struct ViewConfig {
  int aesthetic_frames = 32;
  int aesthetic_size = 224;
  /// Landscape target; portrait sources get the dimensions swapped.
  int temporal_width = 480;
  int temporal_height = 270;
};

/// The three sampled representations of one video.
///
/// aesthetic: `aesthetic_frames` RGB frames at aesthetic_size^2 (semantic branch)
/// spatial:   one native-resolution frame per second (NIQE branch)
/// temporal:  every frame, luma, 480x270 or 270x480 (curvature branch)
struct VideoViews {
  std::vector<FrameImage> aesthetic;
  std::vector<FrameImage> spatial;
  std::vector<FrameImage> temporal;
  std::vector<std::size_t> aesthetic_indices;
  std::vector<std::size_t> spatial_indices;
  double fps = 0.0;
  double duration_seconds = 0.0;
  std::size_t native_frame_count = 0;
};

/// Centered uniform sampling: idx_i = floor((i + 0.5) * total / samples).
/// Throws EmptyInputError when either count is zero.
std::vector<std::size_t> sample_uniform_indices(std::size_t total_frames,
                                                std::size_t samples);

/// One index per second: floor(k * fps) for k < ceil(total / fps), clamped
/// to the last frame.
std::vector<std::size_t> sample_per_second_indices(std::size_t total_frames,
                                                   double fps);

/// Separable cubic-convolution resampling (a = -0.5). Downscaling widens
/// the kernel by the scale factor (antialiasing); borders are mirrored.
/// Output is clamped to [0, 255].
FrameImage resize_bicubic(const FrameImage& frame, int target_w, int target_h);

/// BT.601 luma, Y = 0.299 R + 0.587 G + 0.114 B.
FrameImage rgb_to_luma(const FrameImage& frame);

/// Replicates a luma frame into three identical channels; RGB input is
/// returned unchanged.
FrameImage to_rgb(const FrameImage& frame);

/// Luma of RGB input; luma input is returned unchanged.
FrameImage to_luma(const FrameImage& frame);

/// Incremental view construction for decoders that produce frames one at a
/// time. The total frame count must be known up front so the aesthetic
/// sample positions can be fixed before decoding starts.
class ViewBuilder {
 public:
  ViewBuilder(std::size_t total_frames, double fps, ViewConfig config = {});

  /// Feed the next frame in decode order.
  void push(const FrameImage& frame);

  std::size_t frames_seen() const noexcept { return next_index_; }

  /// Returns the finished views. Throws EmptyInputError if no frame was
  /// pushed, ArgumentError if fewer frames than announced arrived.
  VideoViews finish() &&;

 private:
  ViewConfig config_;
  VideoViews views_;
  std::size_t next_index_ = 0;
  std::size_t next_aesthetic_ = 0;
  std::size_t next_spatial_ = 0;
};

/// Builds all three views from a fully decoded frame sequence.
VideoViews make_views(std::span<const FrameImage> decoded_frames, double fps,
                      const ViewConfig& config = {});

}  // namespace bvista
