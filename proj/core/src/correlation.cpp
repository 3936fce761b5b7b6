#include "bvista/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include "bvista/error.hpp"

namespace bvista {
namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("correlation inputs differ in length (" + std::to_string(x.size()) +
                        " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw ArgumentError("correlation needs at least 2 pairs");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw ArgumentError("correlation inputs must be finite");
    }
  }
}

struct LogisticResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  std::span<const double> x, y;

  int inputs() const { return 4; }
  int values() const { return static_cast<int>(x.size()); }

  int operator()(const Eigen::VectorXd& b, Eigen::VectorXd& r) const {
    const Logistic4 f{b(0), b(1), b(2), b(3)};
    for (std::size_t i = 0; i < x.size(); ++i) r(static_cast<Eigen::Index>(i)) = f(x[i]) - y[i];
    return 0;
  }

  int df(const Eigen::VectorXd& b, Eigen::MatrixXd& jac) const {
    const double s = std::abs(b(3));
    const double sign = b(3) < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double u = (x[i] - b(2)) / s;
      const double g = 1.0 / (1.0 + std::exp(-u));
      const double dg = g * (1.0 - g);
      jac(row, 0) = g;
      jac(row, 1) = 1.0 - g;
      jac(row, 2) = (b(0) - b(1)) * dg * (-1.0 / s);
      jac(row, 3) = (b(0) - b(1)) * dg * (-u / s) * sign;
    }
    return 0;
  }
};

}  // namespace

PlccFit parse_plcc_fit(std::string_view name) {
  if (name == "none") return PlccFit::None;
  if (name == "logistic4") return PlccFit::Logistic4;
  throw ArgumentError("unknown PLCC fit '" + std::string(name) + "'");
}

const char* plcc_fit_name(PlccFit fit) noexcept {
  return fit == PlccFit::None ? "none" : "logistic4";
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw UndefinedCorrelationError("correlation is undefined for constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double srcc(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

double Logistic4::operator()(double x) const noexcept {
  return (b1 - b2) / (1.0 + std::exp(-(x - b3) / std::abs(b4))) + b2;
}

Logistic4 fit_logistic4(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double var = 0.0;
  for (double v : x) var += (v - mx) * (v - mx);
  const double sx = std::sqrt(var / n);
  if (!(sx > 0.0)) throw UndefinedCorrelationError("logistic fit needs non-constant input");

  // Start increasing or decreasing to match the sign of the linear trend.
  const bool increasing = pearson(x, y) >= 0.0;
  Eigen::VectorXd b(4);
  b << (increasing ? *ymax : *ymin), (increasing ? *ymin : *ymax), mx, sx;

  LogisticResidual functor{x, y};
  Eigen::LevenbergMarquardt<LogisticResidual> lm(functor);
  lm.parameters.maxfev = 2000;
  lm.minimize(b);
  if (!b.allFinite() || b(3) == 0.0) {
    throw UndefinedCorrelationError("logistic fit diverged");
  }
  return {b(0), b(1), b(2), b(3)};
}

double plcc(std::span<const double> x, std::span<const double> y, PlccFit fit) {
  if (fit == PlccFit::None) return pearson(x, y);
  const Logistic4 f = fit_logistic4(x, y);
  std::vector<double> mapped(x.size());
  std::transform(x.begin(), x.end(), mapped.begin(), [&](double v) { return f(v); });
  return pearson(mapped, y);
}

}  // namespace bvista
