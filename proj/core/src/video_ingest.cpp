#include "bvista/video_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bvista/error.hpp"
#include "bvista/image_plane.hpp"

namespace bvista {

std::vector<std::size_t> sample_uniform_indices(std::size_t total_frames,
                                                std::size_t samples) {
  if (total_frames == 0 || samples == 0) {
    throw EmptyInputError("uniform sampling needs at least one frame and one sample");
  }
  std::vector<std::size_t> out(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    // Integer form of floor((i + 0.5) * M / N) = floor((2i + 1) * M / 2N).
    out[i] = std::min((2 * i + 1) * total_frames / (2 * samples), total_frames - 1);
  }
  return out;
}

std::vector<std::size_t> sample_per_second_indices(std::size_t total_frames,
                                                   double fps) {
  if (total_frames == 0) throw EmptyInputError("no frames to sample");
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    throw ArgumentError("fps must be positive and finite");
  }
  const auto seconds = static_cast<std::size_t>(
      std::ceil(static_cast<double>(total_frames) / fps - 1e-9));
  std::vector<std::size_t> out(std::max<std::size_t>(seconds, 1));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto idx = static_cast<std::size_t>(std::floor(static_cast<double>(k) * fps));
    out[k] = std::min(idx, total_frames - 1);
  }
  return out;
}

FrameImage resize_bicubic(const FrameImage& frame, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) {
    throw ArgumentError("resize target dimensions must be positive, got " +
                        std::to_string(target_w) + "x" + std::to_string(target_h));
  }
  if (frame.empty()) throw ArgumentError("cannot resize an empty frame");
  if (target_w == frame.width() && target_h == frame.height()) return frame;

  const int channels = frame.channels();
  FrameImage out(target_w, target_h, channels);
  Plane channel(frame.width(), frame.height());
  auto src = frame.data();
  auto dst = out.data();
  for (int c = 0; c < channels; ++c) {
    for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
      channel.values[i] = src[i * channels + c];
    }
    const Plane resized = resample_cubic(channel, target_w, target_h);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
      dst[i * channels + c] = static_cast<float>(std::clamp(resized.values[i], 0.0, 255.0));
    }
  }
  return out;
}

FrameImage rgb_to_luma(const FrameImage& frame) {
  if (frame.channels() != 3) {
    throw ArgumentError("rgb_to_luma expects 3 channels, got " +
                        std::to_string(frame.channels()));
  }
  FrameImage out(frame.width(), frame.height(), 1);
  auto src = frame.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
    const double y = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    dst[i] = static_cast<float>(std::clamp(y, 0.0, 255.0));
  }
  return out;
}

FrameImage to_rgb(const FrameImage& frame) {
  if (frame.channels() == 3) return frame;
  FrameImage out(frame.width(), frame.height(), 3);
  auto src = frame.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
    dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = src[i];
  }
  return out;
}

FrameImage to_luma(const FrameImage& frame) {
  return frame.channels() == 1 ? frame : rgb_to_luma(frame);
}

ViewBuilder::ViewBuilder(std::size_t total_frames, double fps, ViewConfig config)
    : config_(config) {
  if (total_frames == 0) throw EmptyInputError("video has no frames");
  if (config_.aesthetic_frames < 1 || config_.aesthetic_size < 1 ||
      config_.temporal_width < 1 || config_.temporal_height < 1) {
    throw ArgumentError("view configuration sizes must be positive");
  }
  views_.fps = fps;
  views_.native_frame_count = total_frames;
  views_.duration_seconds = static_cast<double>(total_frames) / fps;
  views_.aesthetic_indices = sample_uniform_indices(
      total_frames, static_cast<std::size_t>(config_.aesthetic_frames));
  views_.spatial_indices = sample_per_second_indices(total_frames, fps);
  views_.aesthetic.reserve(views_.aesthetic_indices.size());
  views_.spatial.reserve(views_.spatial_indices.size());
  views_.temporal.reserve(total_frames);
}

void ViewBuilder::push(const FrameImage& frame) {
  if (next_index_ >= views_.native_frame_count) {
    throw ArgumentError("more frames pushed than announced (" +
                        std::to_string(views_.native_frame_count) + ")");
  }
  const std::size_t index = next_index_++;

  // Short videos repeat frames in the aesthetic schedule.
  if (next_aesthetic_ < views_.aesthetic_indices.size() &&
      views_.aesthetic_indices[next_aesthetic_] == index) {
    const FrameImage resized = resize_bicubic(to_rgb(frame), config_.aesthetic_size,
                                              config_.aesthetic_size);
    while (next_aesthetic_ < views_.aesthetic_indices.size() &&
           views_.aesthetic_indices[next_aesthetic_] == index) {
      views_.aesthetic.push_back(resized);
      ++next_aesthetic_;
    }
  }

  while (next_spatial_ < views_.spatial_indices.size() &&
         views_.spatial_indices[next_spatial_] == index) {
    views_.spatial.push_back(frame);
    ++next_spatial_;
  }

  const bool portrait = frame.height() > frame.width();
  const int tw = portrait ? config_.temporal_height : config_.temporal_width;
  const int th = portrait ? config_.temporal_width : config_.temporal_height;
  views_.temporal.push_back(resize_bicubic(to_luma(frame), tw, th));
}

VideoViews ViewBuilder::finish() && {
  if (next_index_ == 0) throw EmptyInputError("no frames were decoded");
  if (next_index_ != views_.native_frame_count) {
    throw ArgumentError("expected " + std::to_string(views_.native_frame_count) +
                        " frames, received " + std::to_string(next_index_));
  }
  return std::move(views_);
}

VideoViews make_views(std::span<const FrameImage> decoded_frames, double fps,
                      const ViewConfig& config) {
  if (decoded_frames.empty()) throw EmptyInputError("no decoded frames");
  ViewBuilder builder(decoded_frames.size(), fps, config);
  for (const FrameImage& frame : decoded_frames) builder.push(frame);
  return std::move(builder).finish();
}

}  // namespace bvista
