#include "bvista/image_plane.hpp"

#include <algorithm>
#include <cmath>

#include "bvista/error.hpp"

namespace bvista {
namespace {

struct Taps {
  std::vector<int> index;     // flattened, `width` entries per output sample
  std::vector<double> weight;
  int width = 0;
};

int mirror(int j, int n) noexcept {
  const int period = 2 * n;
  int m = j % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

// Per-output-sample source taps for one axis.
Taps resample_taps(int in_len, int out_len) {
  const double scale = static_cast<double>(out_len) / in_len;
  const bool shrink = scale < 1.0;
  const double support = shrink ? 4.0 / scale : 4.0;
  const int count = static_cast<int>(std::ceil(support)) + 2;

  Taps taps;
  taps.width = count;
  taps.index.resize(static_cast<std::size_t>(out_len) * count);
  taps.weight.resize(static_cast<std::size_t>(out_len) * count);
  for (int i = 0; i < out_len; ++i) {
    const double centre = (i + 0.5) / scale - 0.5;
    const int left = static_cast<int>(std::floor(centre - support / 2.0));
    double sum = 0.0;
    for (int p = 0; p < count; ++p) {
      const int j = left + p;
      const double d = centre - j;
      const double w = shrink ? scale * cubic_kernel(scale * d) : cubic_kernel(d);
      taps.index[static_cast<std::size_t>(i) * count + p] = mirror(j, in_len);
      taps.weight[static_cast<std::size_t>(i) * count + p] = w;
      sum += w;
    }
    for (int p = 0; p < count; ++p) {
      taps.weight[static_cast<std::size_t>(i) * count + p] /= sum;
    }
  }
  return taps;
}

}  // namespace

double cubic_kernel(double x) noexcept {
  constexpr double a = -0.5;
  const double ax = std::abs(x);
  if (ax <= 1.0) return ((a + 2.0) * ax - (a + 3.0)) * ax * ax + 1.0;
  if (ax < 2.0) return ((a * ax - 5.0 * a) * ax + 8.0 * a) * ax - 4.0 * a;
  return 0.0;
}

Plane plane_from_luma(const FrameImage& frame) {
  if (frame.channels() != 1) {
    throw ArgumentError("expected a single-channel frame");
  }
  Plane out(frame.width(), frame.height());
  auto src = frame.data();
  std::copy(src.begin(), src.end(), out.values.begin());
  return out;
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  if (size < 1 || sigma <= 0.0) {
    throw ArgumentError("gaussian kernel needs size >= 1 and sigma > 0");
  }
  std::vector<double> k(static_cast<std::size_t>(size));
  const double centre = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - centre;
    k[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

Plane filter_separable(const Plane& in, std::span<const double> kernel) {
  return filter_separable(in, kernel, kernel);
}

Plane filter_separable(const Plane& in, std::span<const double> kx,
                       std::span<const double> ky) {
  const int w = in.width;
  const int h = in.height;
  const int rx = static_cast<int>(kx.size()) / 2;
  const int ry = static_cast<int>(ky.size()) / 2;

  Plane tmp(w, h);
  std::vector<double> padded(static_cast<std::size_t>(w + 2 * rx));
  for (int y = 0; y < h; ++y) {
    const double* src = &in.values[static_cast<std::size_t>(y) * w];
    for (int x = -rx; x < w + rx; ++x) {
      padded[static_cast<std::size_t>(x + rx)] = src[std::clamp(x, 0, w - 1)];
    }
    double* dst = &tmp.values[static_cast<std::size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      const double* p = &padded[static_cast<std::size_t>(x)];
      for (std::size_t k = 0; k < kx.size(); ++k) acc += p[k] * kx[k];
      dst[x] = acc;
    }
  }

  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    double* dst = &out.values[static_cast<std::size_t>(y) * w];
    for (std::size_t k = 0; k < ky.size(); ++k) {
      const int sy = std::clamp(y + static_cast<int>(k) - ry, 0, h - 1);
      const double* src = &tmp.values[static_cast<std::size_t>(sy) * w];
      const double wk = ky[k];
      for (int x = 0; x < w; ++x) dst[x] += wk * src[x];
    }
  }
  return out;
}

Plane box_mean(const Plane& in, int radius) {
  const std::vector<double> k(static_cast<std::size_t>(2 * radius + 1),
                              1.0 / (2 * radius + 1));
  return filter_separable(in, k);
}

Plane resample_cubic(const Plane& in, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) {
    throw ArgumentError("resample target dimensions must be positive");
  }
  if (target_w == in.width && target_h == in.height) return in;

  // Rows (vertical axis) first, then columns.
  const Taps ty = resample_taps(in.height, target_h);
  Plane mid(in.width, target_h);
  for (int y = 0; y < target_h; ++y) {
    double* dst = &mid.values[static_cast<std::size_t>(y) * in.width];
    for (int p = 0; p < ty.width; ++p) {
      const std::size_t t = static_cast<std::size_t>(y) * ty.width + p;
      const double wk = ty.weight[t];
      if (wk == 0.0) continue;
      const double* src = &in.values[static_cast<std::size_t>(ty.index[t]) * in.width];
      for (int x = 0; x < in.width; ++x) dst[x] += wk * src[x];
    }
  }

  const Taps tx = resample_taps(in.width, target_w);
  Plane out(target_w, target_h);
  for (int y = 0; y < target_h; ++y) {
    const double* src = &mid.values[static_cast<std::size_t>(y) * in.width];
    double* dst = &out.values[static_cast<std::size_t>(y) * target_w];
    for (int x = 0; x < target_w; ++x) {
      double acc = 0.0;
      const std::size_t base = static_cast<std::size_t>(x) * tx.width;
      for (int p = 0; p < tx.width; ++p) {
        acc += tx.weight[base + p] * src[tx.index[base + p]];
      }
      dst[x] = acc;
    }
  }
  return out;
}

}  // namespace bvista
