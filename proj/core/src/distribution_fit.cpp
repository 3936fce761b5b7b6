#include "bvista/distribution_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bvista/error.hpp"

namespace bvista {
namespace {

struct ShapeTable {
  std::vector<double> alpha;
  // G(2/a)^2 / (G(1/a) G(3/a)); increasing in a.
  std::vector<double> ratio;
};

const ShapeTable& shape_table() {
  static const ShapeTable table = [] {
    ShapeTable t;
    const auto n = static_cast<std::size_t>(
        std::llround((kShapeGridMax - kShapeGridMin) / kShapeGridStep)) + 1;
    t.alpha.resize(n);
    t.ratio.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = kShapeGridMin + kShapeGridStep * static_cast<double>(i);
      t.alpha[i] = a;
      t.ratio[i] = std::exp(2.0 * std::lgamma(2.0 / a) -
                            (std::lgamma(1.0 / a) + std::lgamma(3.0 / a)));
    }
    return t;
  }();
  return table;
}

// Grid position minimising |ratio(a) - target| on the increasing table.
std::size_t nearest_shape(double target) {
  const auto& r = shape_table().ratio;
  const auto it = std::lower_bound(r.begin(), r.end(), target);
  if (it == r.begin()) return 0;
  if (it == r.end()) return r.size() - 1;
  const auto hi = static_cast<std::size_t>(it - r.begin());
  return (target - r[hi - 1]) <= (r[hi] - target) ? hi - 1 : hi;
}

void check_count(std::span<const double> samples) {
  if (samples.size() < kMinFitSamples) {
    throw ArgumentError("distribution fit needs at least " +
                        std::to_string(kMinFitSamples) + " samples, got " +
                        std::to_string(samples.size()));
  }
}

}  // namespace

GgdFit fit_ggd(std::span<const double> samples) {
  check_count(samples);
  double abs_sum = 0.0, sq_sum = 0.0;
  for (double x : samples) {
    abs_sum += std::abs(x);
    sq_sum += x * x;
  }
  const auto n = static_cast<double>(samples.size());
  const double mean_abs = abs_sum / n;
  const double second = sq_sum / n;
  if (!(second > 0.0) || !std::isfinite(second)) {
    throw DegenerateError("GGD fit on zero-variance samples");
  }
  // r(a) = 1 / ratio(a), so match the reciprocal against the table.
  const double rho = mean_abs * mean_abs / second;
  return {shape_table().alpha[nearest_shape(rho)], second};
}

AggdFit fit_aggd(std::span<const double> samples) {
  check_count(samples);
  double left_sq = 0.0, right_sq = 0.0, abs_sum = 0.0;
  std::size_t left_n = 0, right_n = 0;
  for (double x : samples) {
    if (x < 0.0) {
      left_sq += x * x;
      ++left_n;
    } else if (x > 0.0) {
      right_sq += x * x;
      ++right_n;
    }
    abs_sum += std::abs(x);
  }
  if (left_n == 0 || right_n == 0) {
    throw DegenerateError("AGGD fit needs both positive and negative samples");
  }
  const auto n = static_cast<double>(samples.size());
  const double left_std = std::sqrt(left_sq / static_cast<double>(left_n));
  const double right_std = std::sqrt(right_sq / static_cast<double>(right_n));
  const double gamma_hat = left_std / right_std;
  const double mean_abs = abs_sum / n;
  const double r_hat = mean_abs * mean_abs / ((left_sq + right_sq) / n);
  const double r_hat_norm = r_hat * (std::pow(gamma_hat, 3) + 1.0) * (gamma_hat + 1.0) /
                            std::pow(gamma_hat * gamma_hat + 1.0, 2);

  AggdFit fit;
  fit.alpha = shape_table().alpha[nearest_shape(r_hat_norm)];
  const double a = fit.alpha;
  const double scale = std::sqrt(std::exp(std::lgamma(1.0 / a) - std::lgamma(3.0 / a)));
  fit.beta_l = left_std * scale;
  fit.beta_r = right_std * scale;
  fit.eta = (fit.beta_r - fit.beta_l) * std::exp(std::lgamma(2.0 / a) - std::lgamma(1.0 / a));
  return fit;
}

}  // namespace bvista
