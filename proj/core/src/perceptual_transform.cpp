#include "bvista/perceptual_transform.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "bvista/error.hpp"
#include "bvista/image_plane.hpp"

namespace bvista {
namespace {

using cplx = std::complex<double>;

int gaussian_support(double sigma) { return 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1; }

// Luma on [0, 1], optionally square-root compressed, minus the frame mean.
Plane prepare(const FrameImage& luma, bool compress) {
  if (luma.channels() != 1) {
    throw ArgumentError("perceptual transforms need single-channel luma, got " +
                        std::to_string(luma.channels()) + " channels");
  }
  Plane p = plane_from_luma(luma);
  for (double& v : p.values) {
    v /= 255.0;
    if (compress) v = std::sqrt(v);
  }
  // Accumulate around the first sample so constant frames centre to exact zero.
  const double pivot = p.values.front();
  double offset = 0.0;
  for (double v : p.values) offset += v - pivot;
  const double mean = pivot + offset / static_cast<double>(p.size());
  for (double& v : p.values) v -= mean;
  return p;
}

struct GaborTaps {
  std::vector<double> re, im;
  cplx sum;
};

GaborTaps modulated_gaussian(const std::vector<double>& envelope, double frequency) {
  const int r = static_cast<int>(envelope.size()) / 2;
  GaborTaps t;
  for (int i = -r; i <= r; ++i) {
    const cplx tap = envelope[i + r] * std::polar(1.0, frequency * i);
    t.re.push_back(tap.real());
    t.im.push_back(tap.imag());
    t.sum += tap;
  }
  return t;
}

}  // namespace

const char* domain_name(PerceptualDomain domain) noexcept {
  return domain == PerceptualDomain::Lgn ? "lgn" : "v1";
}

LgnTransform::LgnTransform(Params params) : params_(params) {
  if (!(params_.center_sigma > 0.0) || !(params_.surround_sigma > params_.center_sigma) ||
      params_.normalization_window < 1 || params_.normalization_window % 2 == 0) {
    throw ArgumentError("LGN parameters need 0 < centre < surround and an odd window");
  }
}

std::size_t LgnTransform::response_length(int width, int height) const noexcept {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

std::vector<double> LgnTransform::respond(const FrameImage& luma) const {
  const Plane l = prepare(luma, true);
  const auto centre = gaussian_kernel(gaussian_support(params_.center_sigma), params_.center_sigma);
  const auto surround =
      gaussian_kernel(gaussian_support(params_.surround_sigma), params_.surround_sigma);
  Plane band = filter_separable(l, centre);
  const Plane wide = filter_separable(l, surround);
  Plane magnitude(band.width, band.height);
  for (std::size_t i = 0; i < band.size(); ++i) {
    band.values[i] -= wide.values[i];
    magnitude.values[i] = std::abs(band.values[i]);
  }
  const Plane local = box_mean(magnitude, params_.normalization_window / 2);
  for (std::size_t i = 0; i < band.size(); ++i) band.values[i] /= 1.0 + local.values[i];
  return std::move(band.values);
}

V1Transform::V1Transform(Params params) : params_(std::move(params)) {
  if (params_.wavelengths.empty() || params_.orientations < 1 ||
      !(params_.sigma_per_wavelength > 0.0)) {
    throw ArgumentError("V1 parameters need wavelengths, orientations and a positive sigma");
  }
  for (double w : params_.wavelengths) {
    if (!(w >= 2.0)) throw ArgumentError("Gabor wavelengths must be at least 2 pixels");
  }
}

std::size_t V1Transform::response_length(int width, int height) const noexcept {
  return channel_count() * static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

std::vector<double> V1Transform::respond(const FrameImage& luma) const {
  const Plane in = prepare(luma, false);
  const std::size_t n = in.size();
  const auto orientations = static_cast<std::size_t>(params_.orientations);
  std::vector<double> out(response_length(in.width, in.height), 0.0);
  const std::vector<double> identity{1.0};

  for (std::size_t s = 0; s < params_.wavelengths.size(); ++s) {
    const double lambda = params_.wavelengths[s];
    const double sigma = params_.sigma_per_wavelength * lambda;
    const auto envelope = gaussian_kernel(gaussian_support(sigma), sigma);
    const double envelope_sum = std::accumulate(envelope.begin(), envelope.end(), 0.0);
    const Plane blurred = filter_separable(in, envelope);
    const double k = 2.0 * std::numbers::pi / lambda;

    std::vector<double> total(n, 0.0);
    for (std::size_t o = 0; o < orientations; ++o) {
      const double theta = std::numbers::pi * static_cast<double>(o) / params_.orientations;
      const GaborTaps hx = modulated_gaussian(envelope, k * std::cos(theta));
      const GaborTaps hy = modulated_gaussian(envelope, k * std::sin(theta));
      // Subtract dc times the envelope blur so the kernel has no DC response.
      const cplx dc = hx.sum * hy.sum / (envelope_sum * envelope_sum);

      const Plane rr = filter_separable(in, hx.re, identity);
      const Plane ri = filter_separable(in, hx.im, identity);
      const Plane a = filter_separable(rr, identity, hy.re);
      const Plane b = filter_separable(ri, identity, hy.im);
      const Plane c = filter_separable(rr, identity, hy.im);
      const Plane d = filter_separable(ri, identity, hy.re);

      double* energy = out.data() + (s * orientations + o) * n;
      for (std::size_t i = 0; i < n; ++i) {
        const double even = a.values[i] - b.values[i] - dc.real() * blurred.values[i];
        const double odd = c.values[i] + d.values[i] - dc.imag() * blurred.values[i];
        energy[i] = std::hypot(even, odd);
        total[i] += energy[i];
      }
    }
    for (std::size_t o = 0; o < orientations; ++o) {
      double* energy = out.data() + (s * orientations + o) * n;
      for (std::size_t i = 0; i < n; ++i) energy[i] /= 1.0 + total[i];
    }
  }
  return out;
}

std::vector<double> lgn_response(const FrameImage& luma) {
  static const LgnTransform transform;
  return transform.respond(luma);
}

std::vector<double> v1_response(const FrameImage& luma) {
  static const V1Transform transform;
  return transform.respond(luma);
}

}  // namespace bvista
