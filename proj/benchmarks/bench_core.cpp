#include <benchmark/benchmark.h>

#include "gdfc/baselines.hpp"
#include "gdfc/centroids.hpp"
#include "gdfc/network.hpp"
#include "gdfc/trainer.hpp"

using namespace gdfc;

namespace {

Dataset synthetic(std::size_t n, std::size_t dim, int classes,
                  std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.features = Matrix(n, dim);
  data.num_classes = classes;
  for (int c = 0; c < classes; ++c) data.class_names.push_back("c");
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % classes);
    for (std::size_t d = 0; d < dim; ++d) {
      data.features(i, d) =
          0.2 + 0.6 * cls / std::max(1, classes - 1) + rng.uniform(-0.1, 0.1);
    }
    data.labels.push_back(cls);
  }
  return data;
}

void BM_Forward(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  const auto net = init_network({13, width, 6}, Activation::Sigmoid, 1);
  Vec x(13, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward(net, x).output());
  }
}
BENCHMARK(BM_Forward)->Arg(10)->Arg(40);

void BM_ForwardBackward(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  const auto net = init_network({13, width, 6}, Activation::Sigmoid, 1);
  Vec x(13, 0.5);
  const Vec cs(6, 0.2), cn(6, 0.8);
  for (auto _ : state) {
    const auto trace = forward(net, x);
    const auto dout = output_delta(trace, cs, cn, 0.5);
    benchmark::DoNotOptimize(backward(net, trace, dout));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(10)->Arg(40);

void BM_Kmeans(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  std::vector<Vec> pts(n, Vec(6));
  for (auto& p : pts)
    for (double& v : p) v = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans(pts, 9, 7));
  }
}
BENCHMARK(BM_Kmeans)->Arg(200)->Arg(1000);

void BM_TrainEpoch(benchmark::State& state) {
  const auto data = synthetic(static_cast<std::size_t>(state.range(0)), 8, 3, 5);
  TrainConfig cfg;
  cfg.partition_dim = 6;
  cfg.num_centroids = 9;
  auto net = init_network({8, 20, 6}, Activation::Sigmoid, 2);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < data.size(); ++i) {
    pts.push_back(forward(net, data.row(i)).output());
  }
  auto km = kmeans(pts, 9, 4);
  const auto set = color_centroids(km.set, km.assignment, data.labels, 3);
  Rng rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_epoch(net, data, set, cfg, rng, 0.05));
  }
}
BENCHMARK(BM_TrainEpoch)->Arg(200)->Arg(600);

void BM_KnnPredict(benchmark::State& state) {
  const auto data = synthetic(static_cast<std::size_t>(state.range(0)), 8, 3, 9);
  const auto model = knn_fit(data, 5);
  Vec q(8, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_predict(model, q));
  }
}
BENCHMARK(BM_KnnPredict)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
