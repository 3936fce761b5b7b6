#include "bvista/netpbm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "bvista/error.hpp"

namespace bvista {
namespace {

// Next header token, skipping whitespace and '#' comments.
std::string token(std::istream& in) {
  std::string t;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      t += c;
      break;
    }
  }
  while (in.get(c) && !std::isspace(static_cast<unsigned char>(c))) t += c;
  return t;
}

}  // namespace

FrameImage read_netpbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open image " + path.string());
  const std::string magic = token(in);
  if (magic != "P5" && magic != "P6") {
    throw FormatError(path.string() + ": only binary PGM (P5) and PPM (P6) are supported");
  }
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token(in));
    h = std::stoi(token(in));
    maxval = std::stoi(token(in));
  } catch (const std::exception&) {
    throw FormatError(path.string() + ": malformed header");
  }
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw FormatError(path.string() + ": unsupported dimensions or maxval");
  }
  const int channels = magic == "P5" ? 1 : 3;
  std::vector<unsigned char> bytes(static_cast<std::size_t>(w) * h * channels);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw FormatError(path.string() + ": truncated pixel data");
  }
  std::vector<float> data(bytes.size());
  const float scale = 255.0f / static_cast<float>(maxval);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    data[i] = maxval == 255 ? bytes[i] : std::fmin(255.0f, bytes[i] * scale);
  }
  return FrameImage(w, h, channels, std::move(data));
}

void write_netpbm(const std::filesystem::path& path, const FrameImage& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << (frame.channels() == 1 ? "P5" : "P6") << '\n'
      << frame.width() << ' ' << frame.height() << "\n255\n";
  for (float v : frame.data()) {
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace bvista
