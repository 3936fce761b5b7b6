#include "bvista_tools/onnx_provider.hpp"

#include <fstream>

#include <nlohmann/json.hpp>
#include <opencv2/dnn.hpp>

#include "bvista/error.hpp"
#include "bvista/video_ingest.hpp"

namespace bvista::tools {

struct OnnxEmbeddingProvider::Net {
  cv::dnn::Net net;
};

EncoderMetadata read_encoder_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open encoder metadata " + path.string());
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw FormatError(path.string() + ": not a JSON object");
  }
  EncoderMetadata m;
  try {
    m.dimension = doc.at("dimension").get<std::size_t>();
    m.input_size = doc.at("input_size").get<int>();
    m.mean = doc.at("mean").get<std::array<float, 3>>();
    m.std = doc.at("std").get<std::array<float, 3>>();
    m.text_embeddings = doc.at("text_embeddings").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (m.dimension == 0 || m.input_size < 1) {
    throw FormatError(path.string() + ": dimension and input_size must be positive");
  }
  for (float s : m.std) {
    if (!(s > 0.0f)) throw FormatError(path.string() + ": std entries must be positive");
  }
  if (m.text_embeddings.is_relative()) m.text_embeddings = path.parent_path() / m.text_embeddings;
  return m;
}

OnnxEmbeddingProvider::OnnxEmbeddingProvider(const std::filesystem::path& model,
                                             const std::filesystem::path& metadata)
    : meta_(read_encoder_metadata(metadata.empty() ? std::filesystem::path(model).replace_extension(".json")
                                                   : metadata)),
      net_(std::make_unique<Net>()) {
  if (!std::filesystem::exists(model)) throw FormatError("encoder not found: " + model.string());
  try {
    net_->net = cv::dnn::readNetFromONNX(model.string());
  } catch (const cv::Exception& e) {
    throw FormatError("cannot load encoder " + model.string() + ": " + e.what());
  }
  text_ = std::make_unique<FixtureEmbeddingProvider>(meta_.text_embeddings);
  if (text_->dimension() != meta_.dimension) {
    throw FormatError("prompt embeddings have dimension " + std::to_string(text_->dimension()) +
                      ", encoder metadata declares " + std::to_string(meta_.dimension));
  }
}

OnnxEmbeddingProvider::~OnnxEmbeddingProvider() = default;

EmbeddingVector OnnxEmbeddingProvider::embed_image(const FrameImage& frame,
                                                   const ImageKey&) const {
  FrameImage rgb = to_rgb(frame);
  if (rgb.width() != meta_.input_size || rgb.height() != meta_.input_size) {
    rgb = resize_bicubic(rgb, meta_.input_size, meta_.input_size);
  }
  const int s = meta_.input_size;
  const int dims[] = {1, 3, s, s};
  cv::Mat blob(4, dims, CV_32F);
  auto* out = blob.ptr<float>();
  const auto plane = static_cast<std::size_t>(s) * s;
  for (int y = 0; y < s; ++y) {
    for (int x = 0; x < s; ++x) {
      for (int c = 0; c < 3; ++c) {
        out[c * plane + static_cast<std::size_t>(y) * s + x] =
            (rgb.at(x, y, c) / 255.0f - meta_.mean[c]) / meta_.std[c];
      }
    }
  }
  cv::Mat result;
  try {
    net_->net.setInput(blob);
    result = net_->net.forward();
  } catch (const cv::Exception& e) {
    throw FormatError(std::string("encoder inference failed: ") + e.what());
  }
  if (result.total() != meta_.dimension) {
    throw FormatError("encoder produced " + std::to_string(result.total()) +
                      " values, metadata declares " + std::to_string(meta_.dimension));
  }
  const cv::Mat flat = result.reshape(1, 1);
  std::vector<double> values(flat.ptr<float>(), flat.ptr<float>() + flat.total());
  return EmbeddingVector(std::move(values));
}

EmbeddingVector OnnxEmbeddingProvider::embed_text(std::string_view text) const {
  return text_->embed_text(text);
}

}  // namespace bvista::tools
