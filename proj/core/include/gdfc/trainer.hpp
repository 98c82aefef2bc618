#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gdfc/centroids.hpp"
#include "gdfc/dataset.hpp"
#include "gdfc/network.hpp"

namespace gdfc {

struct TrainConfig {
  std::vector<std::size_t> hidden_sizes{20};
  std::size_t partition_dim = 0;   // Q; 0 means "pick 2N at train time"
  std::size_t num_centroids = 0;   // K; 0 means "pick 3N at train time"
  double xi = 0.5;
  double lambda = 1e-6;
  double eta = 0.05;
  double eta_decay = 1.0;  // multiplicative, per epoch
  std::size_t epochs = 500;
  std::size_t recluster_every = 1;  // epochs between k-means refreshes
  std::uint64_t seed = 0;
  std::size_t kmeans_max_iters = 300;
  double kmeans_tol = 1e-6;
  bool divergence_abort = true;
  /// Keep the epoch with the lowest training loss instead of the last.
  bool keep_best_by_loss = false;

  bool operator==(const TrainConfig& o) const = default;
};

struct GdfcModel {
  Network network;
  CentroidSet centroids;
  TrainConfig config;
  std::vector<double> training_loss_curve;
  std::optional<Normalizer> normalizer;
};

/// One SGD pass over the dataset in a shuffled order drawn from `rng`.
/// Per sample: forward, self/non-self centroid lookup, output delta,
/// backward, parameter update. Returns the updated network and the mean
/// per-sample loss, evaluated before each update. eta == 0 leaves the
/// network untouched.
std::pair<Network, double> train_epoch(Network net, const Dataset& data,
                                       const CentroidSet& set,
                                       const TrainConfig& cfg, Rng& rng,
                                       double eta);

/// Full training loop: seeded init, periodic re-map + k-means + recolor,
/// per-epoch SGD. The returned model's centroid set is regenerated from
/// the final network.
GdfcModel train(const Dataset& data, const TrainConfig& cfg);

/// Maps the (already normalized) sample and returns the color of the
/// nearest centroid.
int predict(const GdfcModel& model, const Vec& sample);

}  // namespace gdfc
