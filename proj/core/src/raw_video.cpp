#include "bvista/raw_video.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bvista/error.hpp"

namespace bvista {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Returns false at end of input.
template <typename T>
bool next_token(const std::string& text, std::size_t& cursor, T& value) {
  while (cursor < text.size() && std::isspace(static_cast<unsigned char>(text[cursor]))) {
    ++cursor;
  }
  if (cursor >= text.size()) return false;
  const char* first = text.data() + cursor;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() ||
      (ptr != last && !std::isspace(static_cast<unsigned char>(*ptr)))) {
    throw FormatError("malformed number near offset " + std::to_string(cursor));
  }
  cursor = static_cast<std::size_t>(ptr - text.data());
  return true;
}

}  // namespace

VideoViews build_views(VideoSource& source, const ViewConfig& config) {
  const VideoInfo& info = source.info();
  ViewBuilder builder(info.frame_count, info.fps, config);
  while (auto frame = source.next()) builder.push(*frame);
  return std::move(builder).finish();
}

RawVideoSource::RawVideoSource(const std::filesystem::path& path)
    : text_(slurp(path)), name_(path.string()) {
  long long w = 0, h = 0, c = 0, m = 0;
  double fps = 0.0;
  if (!next_token(text_, cursor_, w) || !next_token(text_, cursor_, h) ||
      !next_token(text_, cursor_, c) || !next_token(text_, cursor_, m) ||
      !next_token(text_, cursor_, fps)) {
    throw FormatError(name_ + ": truncated header, expected `W H C M FPS`");
  }
  if (w < 1 || h < 1 || (c != 1 && c != 3) || m < 1 || !(fps > 0.0) ||
      !std::isfinite(fps)) {
    throw FormatError(name_ + ": invalid header values");
  }
  info_ = {static_cast<int>(w), static_cast<int>(h), static_cast<int>(c),
           static_cast<std::size_t>(m), fps};
}

std::optional<FrameImage> RawVideoSource::next() {
  if (frames_read_ == info_.frame_count) return std::nullopt;
  const std::size_t n = static_cast<std::size_t>(info_.width) * info_.height * info_.channels;
  std::vector<float> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_token(text_, cursor_, data[i])) {
      throw FormatError(name_ + ": truncated at frame " + std::to_string(frames_read_));
    }
  }
  ++frames_read_;
  if (frames_read_ == info_.frame_count) text_ = std::string();
  return FrameImage(info_.width, info_.height, info_.channels, std::move(data));
}

std::unique_ptr<VideoSource> RawVideoDecoder::open(const std::filesystem::path& path) const {
  return std::make_unique<RawVideoSource>(path);
}

DecodedVideo read_raw_video(const std::filesystem::path& path) {
  RawVideoSource source(path);
  DecodedVideo out;
  out.fps = source.info().fps;
  out.frames.reserve(source.info().frame_count);
  while (auto frame = source.next()) out.frames.push_back(std::move(*frame));
  return out;
}

void write_raw_video(const std::filesystem::path& path,
                     std::span<const FrameImage> frames, double fps) {
  if (frames.empty()) throw EmptyInputError("no frames to write");
  const FrameImage& first = frames.front();
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << first.width() << ' ' << first.height() << ' ' << first.channels() << ' '
      << frames.size() << ' ' << fps << '\n';
  char buf[32];
  for (const FrameImage& frame : frames) {
    if (frame.width() != first.width() || frame.height() != first.height() ||
        frame.channels() != first.channels()) {
      throw ArgumentError("all frames must share one shape");
    }
    auto data = frame.data();
    const std::size_t row_len = static_cast<std::size_t>(frame.width()) * frame.channels();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const float v = std::round(data[i] * 1000.0f) / 1000.0f;
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out.write(buf, ptr - buf);
      out.put((i + 1) % row_len == 0 ? '\n' : ' ');
    }
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace bvista
