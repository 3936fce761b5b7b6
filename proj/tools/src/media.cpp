#include "bvista_tools/media.hpp"

#include <cmath>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>
#include <opencv2/videoio.hpp>

#include "bvista/error.hpp"
#include "bvista/netpbm.hpp"

namespace bvista::tools {
namespace {

FrameImage from_mat(const cv::Mat& bgr) {
  cv::Mat converted;
  int channels = bgr.channels();
  if (channels == 1) {
    converted = bgr;
  } else if (channels == 3) {
    cv::cvtColor(bgr, converted, cv::COLOR_BGR2RGB);
  } else if (channels == 4) {
    cv::cvtColor(bgr, converted, cv::COLOR_BGRA2RGB);
    channels = 3;
  } else {
    throw FormatError("unsupported channel count " + std::to_string(channels));
  }
  cv::Mat as_float;
  const double scale = converted.depth() == CV_16U ? 255.0 / 65535.0 : 1.0;
  converted.convertTo(as_float, CV_32F, scale);
  if (!as_float.isContinuous()) as_float = as_float.clone();
  const auto* p = as_float.ptr<float>();
  std::vector<float> data(p, p + as_float.total() * channels);
  return FrameImage(as_float.cols, as_float.rows, channels, std::move(data));
}

class OpenCvVideoSource final : public VideoSource {
 public:
  explicit OpenCvVideoSource(const std::filesystem::path& path) : name_(path.string()) {
    cv::VideoCapture probe(name_);
    if (!probe.isOpened()) throw FormatError("cannot open video " + name_);
    std::size_t count = 0;
    while (probe.grab()) ++count;
    if (count == 0) throw FormatError(name_ + ": no decodable frames");
    info_.fps = probe.get(cv::CAP_PROP_FPS);
    if (!(info_.fps > 0.0) || !std::isfinite(info_.fps)) {
      throw FormatError(name_ + ": container reports no frame rate");
    }
    info_.frame_count = count;
    info_.width = static_cast<int>(probe.get(cv::CAP_PROP_FRAME_WIDTH));
    info_.height = static_cast<int>(probe.get(cv::CAP_PROP_FRAME_HEIGHT));
    info_.channels = 3;
    capture_.open(name_);
    if (!capture_.isOpened()) throw FormatError("cannot reopen video " + name_);
  }

  const VideoInfo& info() const noexcept override { return info_; }

  std::optional<FrameImage> next() override {
    if (delivered_ == info_.frame_count) return std::nullopt;
    cv::Mat frame;
    if (!capture_.read(frame) || frame.empty()) {
      throw FormatError(name_ + ": decoding stopped at frame " + std::to_string(delivered_) +
                        " of " + std::to_string(info_.frame_count));
    }
    ++delivered_;
    return from_mat(frame);
  }

 private:
  std::string name_;
  VideoInfo info_;
  cv::VideoCapture capture_;
  std::size_t delivered_ = 0;
};

}  // namespace

std::unique_ptr<VideoSource> OpenCvVideoDecoder::open(const std::filesystem::path& path) const {
  if (!std::filesystem::exists(path)) throw FormatError("video not found: " + path.string());
  return std::make_unique<OpenCvVideoSource>(path);
}

std::unique_ptr<VideoSource> AutoVideoDecoder::open(const std::filesystem::path& path) const {
  if (path.extension() == kRawVideoExtension) return raw_.open(path);
  return opencv_.open(path);
}

FrameImage load_image(const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext == ".pgm" || ext == ".ppm") return read_netpbm(path);
  const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (img.empty()) throw FormatError("cannot decode image " + path.string());
  return from_mat(img);
}

}  // namespace bvista::tools
