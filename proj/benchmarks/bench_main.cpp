#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "bvista/correlation.hpp"
#include "bvista/niqe.hpp"
#include "bvista/perceptual_transform.hpp"
#include "bvista/temporal.hpp"

namespace {

using namespace bvista;

// Sum of a few random gratings plus mild noise; enough structure for NIQE.
FrameImage texture(int w, int h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<float> noise(0.0f, 3.0f);
  struct Grating {
    double fx, fy, phase, amp;
  };
  std::vector<Grating> g;
  for (int i = 0; i < 6; ++i) g.push_back({0.2 * u(rng), 0.2 * u(rng), 6.28 * u(rng), 20.0});
  std::vector<float> data(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 128.0;
      for (const auto& k : g) v += k.amp * std::sin(k.fx * x + k.fy * y + k.phase);
      data[static_cast<std::size_t>(y) * w + x] = static_cast<float>(v) + noise(rng);
    }
  }
  return FrameImage(w, h, 1, std::move(data));
}

NiqeModel identity_model() {
  const int d = static_cast<int>(NiqeConfig{}.feature_count());
  return {Eigen::VectorXd::Constant(d, 0.5), Eigen::MatrixXd::Identity(d, d)};
}

void BM_Mscn(benchmark::State& state) {
  const FrameImage f = texture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_mscn(f));
}
BENCHMARK(BM_Mscn)->Args({480, 270})->Args({1280, 720})->Unit(benchmark::kMillisecond);

void BM_NiqeFrame(benchmark::State& state) {
  const FrameImage f = texture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 2);
  const NiqeModel model = identity_model();
  for (auto _ : state) benchmark::DoNotOptimize(niqe_score(f, model));
}
BENCHMARK(BM_NiqeFrame)->Args({480, 270})->Args({1280, 720})->Unit(benchmark::kMillisecond);

void BM_LgnResponse(benchmark::State& state) {
  const FrameImage f = texture(480, 270, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lgn_response(f));
}
BENCHMARK(BM_LgnResponse)->Unit(benchmark::kMillisecond);

void BM_V1Response(benchmark::State& state) {
  const FrameImage f = texture(480, 270, 4);
  for (auto _ : state) benchmark::DoNotOptimize(v1_response(f));
}
BENCHMARK(BM_V1Response)->Unit(benchmark::kMillisecond);

void BM_Curvature(benchmark::State& state) {
  std::mt19937 rng(5);
  std::normal_distribution<double> n;
  PerceptualTrajectory t;
  for (int j = 0; j < 16; ++j) {
    std::vector<double> p(static_cast<std::size_t>(state.range(0)));
    for (double& x : p) x = n(rng);
    t.points.push_back(std::move(p));
  }
  for (auto _ : state) benchmark::DoNotOptimize(trajectory_curvature(t));
  state.SetItemsProcessed(state.iterations() * 16 * state.range(0));
}
BENCHMARK(BM_Curvature)->Arg(129600)->Arg(1036800)->Unit(benchmark::kMillisecond);

void BM_Srcc(benchmark::State& state) {
  std::mt19937 rng(6);
  std::normal_distribution<double> n;
  std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = n(rng);
    y[i] = x[i] + n(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(srcc(x, y));
}
BENCHMARK(BM_Srcc)->Arg(1200)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
