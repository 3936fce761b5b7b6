#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "bvista/frame.hpp"

namespace bvista {

enum class PerceptualDomain { Lgn, V1 };

const char* domain_name(PerceptualDomain domain) noexcept;

/// Maps a luma frame to a flattened response vector. Implementations must be
/// deterministic and safe to call concurrently.
class PerceptualDomainTransform {
 public:
  virtual ~PerceptualDomainTransform() = default;
  virtual PerceptualDomain domain() const noexcept = 0;
  /// Throws ArgumentError on multi-channel input.
  virtual std::vector<double> respond(const FrameImage& luma) const = 0;
  virtual std::size_t response_length(int width, int height) const noexcept = 0;
};

/// Default LGN model: sqrt luminance compression on [0, 1], DoG band-pass
/// (unit-sum Gaussians, centre sigma 1, surround sigma 2), then division by
/// 1 + the 9x9 local mean of |band-pass|.
class LgnTransform final : public PerceptualDomainTransform {
 public:
  struct Params {
    double center_sigma = 1.0;
    double surround_sigma = 2.0;
    int normalization_window = 9;
  };

  LgnTransform() = default;
  explicit LgnTransform(Params params);

  PerceptualDomain domain() const noexcept override { return PerceptualDomain::Lgn; }
  std::vector<double> respond(const FrameImage& luma) const override;
  std::size_t response_length(int width, int height) const noexcept override;

 private:
  Params params_;
};

/// Default V1 model: quadrature Gabor energy at 4 orientations (0, 45, 90,
/// 135 degrees; 0 responds to vertical structure) and the given wavelengths.
/// Each scale is divided by 1 + its summed energy over orientations.
/// Output layout: channel (scale * 4 + orientation), then row-major pixels.
class V1Transform final : public PerceptualDomainTransform {
 public:
  struct Params {
    std::vector<double> wavelengths{4.0, 8.0};
    int orientations = 4;
    /// Envelope sigma as a multiple of the wavelength.
    double sigma_per_wavelength = 0.5;
  };

  V1Transform() = default;
  explicit V1Transform(Params params);

  PerceptualDomain domain() const noexcept override { return PerceptualDomain::V1; }
  std::vector<double> respond(const FrameImage& luma) const override;
  std::size_t response_length(int width, int height) const noexcept override;

  std::size_t channel_count() const noexcept {
    return params_.wavelengths.size() * static_cast<std::size_t>(params_.orientations);
  }

 private:
  Params params_;
};

/// Convenience wrappers using the default parameters.
std::vector<double> lgn_response(const FrameImage& luma);
std::vector<double> v1_response(const FrameImage& luma);

}  // namespace bvista
