#pragma once

#include <filesystem>
#include <memory>

#include "bvista/frame.hpp"
#include "bvista/raw_video.hpp"

namespace bvista::tools {

/// Extension of the raw text video fixture format.
inline constexpr const char* kRawVideoExtension = ".bvraw";

/// Container/codec decoding through OpenCV videoio. The file is scanned
/// once to count frames, then reopened for decoding.
class OpenCvVideoDecoder final : public VideoDecoder {
 public:
  std::unique_ptr<VideoSource> open(const std::filesystem::path& path) const override;
};

/// Routes `.bvraw` files to RawVideoDecoder and everything else to OpenCV.
class AutoVideoDecoder final : public VideoDecoder {
 public:
  std::unique_ptr<VideoSource> open(const std::filesystem::path& path) const override;

 private:
  RawVideoDecoder raw_;
  OpenCvVideoDecoder opencv_;
};

/// Binary netpbm is read natively; other formats go through OpenCV
/// imgcodecs. Returns RGB (or luma for grey sources) on [0, 255].
FrameImage load_image(const std::filesystem::path& path);

}  // namespace bvista::tools
