#pragma once

#include <cstddef>
#include <span>

namespace bvista {

/// Generalised Gaussian fit.
struct GgdFit {
  double alpha = 0.0;     // shape
  double sigma_sq = 0.0;  // second moment
};

/// Asymmetric generalised Gaussian fit. beta_l / beta_r are the left and
/// right scale parameters, eta the distribution mean.
struct AggdFit {
  double alpha = 0.0;
  double eta = 0.0;
  double beta_l = 0.0;
  double beta_r = 0.0;
};

/// Shape parameters are searched on the grid 0.2, 0.201, ..., 10.
inline constexpr double kShapeGridMin = 0.2;
inline constexpr double kShapeGridMax = 10.0;
inline constexpr double kShapeGridStep = 0.001;
inline constexpr std::size_t kMinFitSamples = 100;

/// Moment-matching GGD fit: alpha minimises |E[x^2]/E[|x|]^2 - r(alpha)|
/// with r(a) = G(1/a) G(3/a) / G(2/a)^2.
/// Throws ArgumentError below kMinFitSamples, DegenerateError for zero
/// second moment.
GgdFit fit_ggd(std::span<const double> samples);

/// Moment-matching AGGD fit with separate left/right deviations.
/// Throws ArgumentError below kMinFitSamples, DegenerateError when the
/// samples are one-sided.
AggdFit fit_aggd(std::span<const double> samples);

}  // namespace bvista
