#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bvista/frame.hpp"
#include "bvista/video_ingest.hpp"

namespace bvista {

struct VideoInfo {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::size_t frame_count = 0;
  double fps = 0.0;
};

/// Sequential frame producer. The library never parses containers itself;
/// adapters (raw text fixtures here, codec libraries in tools/) implement
/// this interface.
class VideoSource {
 public:
  virtual ~VideoSource() = default;
  virtual const VideoInfo& info() const noexcept = 0;
  /// Next frame in presentation order, or nullopt at end of stream.
  virtual std::optional<FrameImage> next() = 0;
};

/// Opens a path as a VideoSource.
class VideoDecoder {
 public:
  virtual ~VideoDecoder() = default;
  virtual std::unique_ptr<VideoSource> open(const std::filesystem::path& path) const = 0;
};

/// Drains a source through a ViewBuilder.
VideoViews build_views(VideoSource& source, const ViewConfig& config = {});

/// Raw text fixture: header `W H C M FPS`, then M*W*H*C whitespace-separated
/// samples (frame-major, row-major, interleaved channels).
class RawVideoSource final : public VideoSource {
 public:
  explicit RawVideoSource(const std::filesystem::path& path);
  const VideoInfo& info() const noexcept override { return info_; }
  std::optional<FrameImage> next() override;

 private:
  std::string text_;
  std::size_t cursor_ = 0;
  std::size_t frames_read_ = 0;
  VideoInfo info_;
  std::string name_;
};

/// Decodes raw text fixtures; rejects other paths with FormatError.
class RawVideoDecoder final : public VideoDecoder {
 public:
  std::unique_ptr<VideoSource> open(const std::filesystem::path& path) const override;
};

struct DecodedVideo {
  std::vector<FrameImage> frames;
  double fps = 0.0;
};

DecodedVideo read_raw_video(const std::filesystem::path& path);

/// Writes frames in the raw text fixture format; samples are written with
/// up to 3 decimals (integers are written bare).
void write_raw_video(const std::filesystem::path& path,
                     std::span<const FrameImage> frames, double fps);

}  // namespace bvista
