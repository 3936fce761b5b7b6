#pragma once

#include <filesystem>

#include "bvista/frame.hpp"

namespace bvista {

/// Binary PGM (P5, luma) or PPM (P6, RGB) with maxval <= 255.
FrameImage read_netpbm(const std::filesystem::path& path);

/// Writes P5 for luma frames and P6 for RGB, rounding to the nearest byte.
void write_netpbm(const std::filesystem::path& path, const FrameImage& frame);

}  // namespace bvista
