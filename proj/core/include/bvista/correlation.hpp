#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace bvista {

enum class PlccFit { None, Logistic4 };

/// "none" or "logistic4"; throws ArgumentError otherwise.
PlccFit parse_plcc_fit(std::string_view name);
const char* plcc_fit_name(PlccFit fit) noexcept;

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Pearson correlation. Throws ArgumentError on length mismatch or n < 2,
/// UndefinedCorrelationError when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank-order correlation (Pearson of fractional ranks).
double srcc(std::span<const double> x, std::span<const double> y);

/// Parameters of y = (b1 - b2) / (1 + exp(-(x - b3) / |b4|)) + b2.
struct Logistic4 {
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 1.0;
  double operator()(double x) const noexcept;
};

/// Least-squares fit of the four-parameter logistic mapping x onto y
/// (Levenberg-Marquardt from a data-driven start).
Logistic4 fit_logistic4(std::span<const double> x, std::span<const double> y);

/// Pearson linear correlation, optionally after mapping x through a fitted
/// four-parameter logistic.
double plcc(std::span<const double> x, std::span<const double> y, PlccFit fit = PlccFit::None);

}  // namespace bvista
