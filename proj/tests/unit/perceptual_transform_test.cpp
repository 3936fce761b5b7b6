#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bvista/error.hpp"
#include "bvista/perceptual_transform.hpp"
#include "synthetic.hpp"

namespace bvista {
namespace {

FrameImage random_frame(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 255.0f);
  FrameImage f(w, h, 1);
  for (float& v : f.data()) v = u(rng);
  return f;
}

FrameImage grating(int w, int h, double period, bool vertical_bars) {
  FrameImage f(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      f.at(x, y) = static_cast<float>(
          128.0 + 100.0 * std::sin(2 * std::numbers::pi * (vertical_bars ? x : y) / period));
  return f;
}

// Brute-force references: direct 2-D sums with replicate borders.
struct Field {
  int w, h;
  std::vector<double> v;
  double at(int x, int y) const {
    return v[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
  }
};

Field prepared(const FrameImage& f, bool compress) {
  Field p{f.width(), f.height(), {}};
  double mean = 0.0;
  for (float s : f.data()) {
    const double v = compress ? std::sqrt(s / 255.0) : s / 255.0;
    p.v.push_back(v);
    mean += v;
  }
  mean /= static_cast<double>(p.v.size());
  for (double& v : p.v) v -= mean;
  return p;
}

std::vector<double> taps(double sigma) {
  const int r = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> t;
  double s = 0.0;
  for (int i = -r; i <= r; ++i) {
    t.push_back(std::exp(-i * i / (2 * sigma * sigma)));
    s += t.back();
  }
  for (double& v : t) v /= s;
  return t;
}

double blur_at(const Field& p, const std::vector<double>& g, int x, int y) {
  const int r = static_cast<int>(g.size()) / 2;
  double acc = 0.0;
  for (int j = -r; j <= r; ++j)
    for (int i = -r; i <= r; ++i) acc += g[i + r] * g[j + r] * p.at(x + i, y + j);
  return acc;
}

double lgn_oracle(const FrameImage& f, int x, int y) {
  const Field p = prepared(f, true);
  const auto g1 = taps(1.0), g2 = taps(2.0);
  auto band = [&](int u, int v) {
    u = std::clamp(u, 0, p.w - 1);
    v = std::clamp(v, 0, p.h - 1);
    return blur_at(p, g1, u, v) - blur_at(p, g2, u, v);
  };
  double local = 0.0;
  for (int j = -4; j <= 4; ++j)
    for (int i = -4; i <= 4; ++i) local += std::abs(band(x + i, y + j));
  return band(x, y) / (1.0 + local / 81.0);
}

double gabor_energy_oracle(const Field& p, double lambda, double theta, int x, int y) {
  const auto g = taps(0.5 * lambda);
  const int r = static_cast<int>(g.size()) / 2;
  const double k = 2 * std::numbers::pi / lambda;
  std::complex<double> dc = 0.0, acc = 0.0;
  for (int j = -r; j <= r; ++j)
    for (int i = -r; i <= r; ++i)
      dc += g[i + r] * g[j + r] * std::polar(1.0, k * (i * std::cos(theta) + j * std::sin(theta)));
  for (int j = -r; j <= r; ++j)
    for (int i = -r; i <= r; ++i) {
      const auto h = g[i + r] * g[j + r] *
                     (std::polar(1.0, k * (i * std::cos(theta) + j * std::sin(theta))) - dc);
      acc += h * p.at(x + i, y + j);
    }
  return std::abs(acc);
}

TEST(LgnTransform, MatchesDirectComputation) {
  const FrameImage f = random_frame(23, 17, 4);
  const auto r = LgnTransform().respond(f);
  ASSERT_EQ(r.size(), 23u * 17u);
  for (auto [x, y] : {std::pair{0, 0}, {11, 8}, {22, 16}, {3, 14}}) {
    EXPECT_NEAR(r[static_cast<std::size_t>(y) * 23 + x], lgn_oracle(f, x, y), 1e-12);
  }
}

TEST(V1Transform, MatchesDirectComputation) {
  const FrameImage f = random_frame(30, 26, 8);
  const auto r = V1Transform().respond(f);
  const std::size_t n = 30 * 26;
  ASSERT_EQ(r.size(), 8 * n);
  const Field p = prepared(f, false);
  for (auto [x, y] : {std::pair{15, 13}, {0, 25}, {29, 2}}) {
    for (int s = 0; s < 2; ++s) {
      const double lambda = s == 0 ? 4.0 : 8.0;
      double e[4], total = 0.0;
      for (int o = 0; o < 4; ++o) {
        e[o] = gabor_energy_oracle(p, lambda, std::numbers::pi * o / 4, x, y);
        total += e[o];
      }
      for (int o = 0; o < 4; ++o) {
        EXPECT_NEAR(r[(s * 4 + o) * n + static_cast<std::size_t>(y) * 30 + x], e[o] / (1 + total),
                    1e-12)
            << s << " " << o;
      }
    }
  }
}

TEST(V1Transform, OrientationSelectivity) {
  const V1Transform v1({{8.0}, 4, 0.5});
  const std::size_t n = 64 * 64;
  const std::size_t centre = 32 * 64 + 32;
  const auto vertical = v1.respond(grating(64, 64, 8.0, true));
  const auto horizontal = v1.respond(grating(64, 64, 8.0, false));
  // Channel 0 is tuned to vertical bars, channel 2 to horizontal ones.
  EXPECT_GT(vertical[0 * n + centre], 5 * vertical[2 * n + centre]);
  EXPECT_GT(horizontal[2 * n + centre], 5 * horizontal[0 * n + centre]);
}

TEST(PerceptualTransforms, ConstantFramesRespondWithZeros) {
  FrameImage flat(40, 30, 1);
  std::fill(flat.data().begin(), flat.data().end(), 77.0f);
  for (double v : lgn_response(flat)) EXPECT_EQ(v, 0.0);
  for (double v : v1_response(flat)) EXPECT_EQ(v, 0.0);
}

TEST(PerceptualTransforms, LengthsDomainsAndErrors) {
  const LgnTransform lgn;
  const V1Transform v1;
  EXPECT_EQ(lgn.domain(), PerceptualDomain::Lgn);
  EXPECT_EQ(v1.domain(), PerceptualDomain::V1);
  EXPECT_STREQ(domain_name(PerceptualDomain::V1), "v1");
  EXPECT_EQ(lgn.response_length(480, 270), 480u * 270u);
  EXPECT_EQ(v1.response_length(480, 270), 8u * 480u * 270u);
  EXPECT_EQ(v1.channel_count(), 8u);
  EXPECT_THROW(lgn.respond(FrameImage(8, 8, 3)), ArgumentError);
  EXPECT_THROW(v1.respond(FrameImage(8, 8, 3)), ArgumentError);
  EXPECT_THROW(LgnTransform({2.0, 1.0, 9}), ArgumentError);
  EXPECT_THROW(LgnTransform({1.0, 2.0, 8}), ArgumentError);
  EXPECT_THROW(V1Transform({{1.0}, 4, 0.5}), ArgumentError);
  EXPECT_THROW(V1Transform({{}, 4, 0.5}), ArgumentError);
}

TEST(PerceptualTransforms, Deterministic) {
  const FrameImage f = random_frame(32, 24, 1);
  EXPECT_EQ(lgn_response(f), lgn_response(f));
  EXPECT_EQ(v1_response(f), v1_response(f));
}

}  // namespace
}  // namespace bvista
