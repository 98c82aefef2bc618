#include "gdfc/trainer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gdfc {

namespace {

std::vector<Vec> map_all(const Network& net, const Dataset& data) {
  std::vector<Vec> points;
  points.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    points.push_back(forward(net, data.row(i)).output());
  }
  return points;
}

CentroidSet recluster(const Network& net, const Dataset& data,
                      const TrainConfig& cfg, std::size_t k,
                      std::uint64_t seed, const CentroidSet* previous) {
  const std::vector<Vec> points = map_all(net, data);
  // A saturated (diverging) network collapses the mapped points onto a
  // handful of corners; report that as divergence, not a usage error.
  std::vector<Vec> distinct = points;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < k) {
    throw DivergenceError(
        "partition space collapsed: fewer distinct mapped points than "
        "centroids");
  }
  const std::vector<Vec>* warm = nullptr;
  std::vector<Vec> prev_pos;
  if (previous && previous->size() == k) {
    for (const Centroid& c : previous->centroids) prev_pos.push_back(c.position);
    warm = &prev_pos;
  }
  KmeansResult km =
      kmeans(points, k, seed, cfg.kmeans_max_iters, cfg.kmeans_tol, warm);
  return color_centroids(std::move(km.set), km.assignment, data.labels,
                         data.num_classes);
}

}  // namespace

std::pair<Network, double> train_epoch(Network net, const Dataset& data,
                                       const CentroidSet& set,
                                       const TrainConfig& cfg, Rng& rng,
                                       double eta) {
  if (data.size() == 0) throw std::invalid_argument("train_epoch: empty data");
  if (set.num_classes == 0) {
    throw std::invalid_argument("train_epoch: centroid set is not colored");
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  double loss_sum = 0.0;
  for (std::size_t i : order) {
    const Vec sample = data.row(i);
    const int label = data.labels[i];
    const ActivationTrace trace = forward(net, sample);
    const Vec& beta = trace.output();
    const Vec& cs = nearest_self(beta, set, label).position;
    const Vec& cn = nearest_noself(beta, set, label).position;
    loss_sum += centroid_loss(beta, cs, cn, cfg.xi, cfg.lambda, net);
    if (eta > 0.0) {
      const Vec delta = output_delta(trace, cs, cn, cfg.xi);
      const GradientSet grads = backward(net, trace, delta);
      net = apply_updates(std::move(net), grads, eta, cfg.lambda);
    }
  }
  return {std::move(net), loss_sum / static_cast<double>(data.size())};
}

GdfcModel train(const Dataset& data, const TrainConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(data.num_classes);
  const std::size_t q = cfg.partition_dim > 0 ? cfg.partition_dim : 2 * n;
  const std::size_t k = cfg.num_centroids > 0 ? cfg.num_centroids : 3 * n;
  if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
  if (cfg.recluster_every < 1) {
    throw std::invalid_argument("train: recluster_every must be >= 1");
  }
  if (cfg.eta <= 0.0) throw std::invalid_argument("train: eta must be > 0");
  if (k < n) {
    throw std::invalid_argument("train: need at least one centroid per class");
  }
  if (data.size() < k) {
    throw std::invalid_argument("train: fewer samples than centroids");
  }

  std::vector<std::size_t> layers;
  layers.push_back(data.dim());
  for (std::size_t h : cfg.hidden_sizes) layers.push_back(h);
  layers.push_back(q);

  Network net =
      init_network(layers, Activation::Sigmoid, mix_seed(cfg.seed, 0x1417));
  Rng shuffle_rng(mix_seed(cfg.seed, 0x5u));
  CentroidSet set;

  GdfcModel model;
  model.config = cfg;
  double best_loss = std::numeric_limits<double>::infinity();
  Network best_net = net;

  double eta = cfg.eta;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (epoch % cfg.recluster_every == 0) {
      set = recluster(net, data, cfg, k, mix_seed(cfg.seed, 0x6b00 + epoch),
                      epoch == 0 ? nullptr : &set);
    }
    double mean_loss = 0.0;
    // train_epoch consumes the network; snapshot it when a divergence is
    // survivable so "last finite network" means the epoch-start state.
    Network snapshot = cfg.divergence_abort ? Network{} : net;
    try {
      std::tie(net, mean_loss) =
          train_epoch(std::move(net), data, set, cfg, shuffle_rng, eta);
    } catch (const DivergenceError&) {
      if (cfg.divergence_abort) throw;
      net = std::move(snapshot);
      break;
    }
    model.training_loss_curve.push_back(mean_loss);
    if (mean_loss < best_loss) {
      best_loss = mean_loss;
      if (cfg.keep_best_by_loss) best_net = net;
    }
    eta *= cfg.eta_decay;
  }

  model.network = cfg.keep_best_by_loss ? std::move(best_net) : std::move(net);
  model.centroids = recluster(model.network, data, cfg, k,
                              mix_seed(cfg.seed, 0xf1), &set);
  model.normalizer = data.normalizer;
  return model;
}

int predict(const GdfcModel& model, const Vec& sample) {
  const ActivationTrace trace = forward(model.network, sample);
  return nearest_any(trace.output(), model.centroids).color;
}

}  // namespace gdfc
