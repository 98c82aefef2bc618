#include "gdfc/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "gdfc/trainer.hpp"

namespace gdfc {

CentroidSet one_hot_centroids(int n_classes) {
  if (n_classes < 1) {
    throw std::invalid_argument("one_hot_centroids: need >= 1 class");
  }
  CentroidSet set;
  set.dimension = static_cast<std::size_t>(n_classes);
  set.num_classes = n_classes;
  for (int c = 0; c < n_classes; ++c) {
    Centroid cen;
    cen.position.assign(set.dimension, 0.0);
    cen.position[static_cast<std::size_t>(c)] = 1.0;
    cen.color = c;
    set.centroids.push_back(std::move(cen));
  }
  return set;
}

FnnModel fnn_train(const Dataset& data, std::size_t hidden, double eta,
                   double lambda, std::size_t epochs, std::uint64_t seed) {
  if (hidden < 1) throw std::invalid_argument("fnn_train: hidden must be >= 1");
  if (data.size() == 0) throw std::invalid_argument("fnn_train: empty data");

  const CentroidSet corners = one_hot_centroids(data.num_classes);

  TrainConfig cfg;
  cfg.xi = 0.0;
  cfg.lambda = lambda;
  cfg.seed = seed;

  Network net = init_network(
      {data.dim(), hidden, static_cast<std::size_t>(data.num_classes)},
      Activation::Sigmoid, mix_seed(seed, 0x1417));
  Rng rng(mix_seed(seed, 0x5u));
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    std::tie(net, std::ignore) =
        train_epoch(std::move(net), data, corners, cfg, rng, eta);
  }

  FnnModel model;
  model.network = std::move(net);
  model.normalizer = data.normalizer;
  return model;
}

int fnn_predict(const FnnModel& model, const Vec& sample) {
  const Vec out = forward(model.network, sample).output();
  std::size_t best = 0;
  for (std::size_t c = 1; c < out.size(); ++c) {
    if (out[c] > out[best]) best = c;
  }
  return static_cast<int>(best);
}

KnnModel knn_fit(const Dataset& data, std::size_t k) {
  if (data.size() == 0) throw std::invalid_argument("knn_fit: empty data");
  if (k < 1 || k > data.size()) {
    throw std::invalid_argument("knn_fit: k out of range");
  }
  KnnModel model;
  model.train_features = data.features;
  model.train_labels = data.labels;
  model.num_classes = data.num_classes;
  model.k = k;
  model.normalizer = data.normalizer;
  return model;
}

int knn_predict(const KnnModel& model, const Vec& sample) {
  const std::size_t m = model.train_features.rows;
  if (m == 0) throw std::invalid_argument("knn_predict: empty training set");
  if (sample.size() != model.train_features.cols) {
    throw std::invalid_argument("knn_predict: dimension mismatch");
  }

  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double d = 0.0;
    for (std::size_t c = 0; c < sample.size(); ++c) {
      const double diff = sample[c] - model.train_features(i, c);
      d += diff * diff;
    }
    dist.emplace_back(d, i);
  }
  std::partial_sort(dist.begin(), dist.begin() + model.k, dist.end());

  std::vector<std::size_t> votes(model.num_classes, 0);
  for (std::size_t i = 0; i < model.k; ++i) {
    ++votes[model.train_labels[dist[i].second]];
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < votes.size(); ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return static_cast<int>(best);
}

}  // namespace gdfc
