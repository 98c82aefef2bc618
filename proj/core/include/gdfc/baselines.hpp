#pragma once

#include <cstdint>
#include <optional>

#include "gdfc/centroids.hpp"
#include "gdfc/dataset.hpp"
#include "gdfc/network.hpp"

namespace gdfc {

/// One-per-class feedforward baseline: output width equals the class
/// count, trained toward one-hot targets.
struct FnnModel {
  Network network;
  std::optional<Normalizer> normalizer;
};

struct KnnModel {
  Matrix train_features;
  std::vector<int> train_labels;
  int num_classes = 0;
  std::size_t k = 1;
  std::optional<Normalizer> normalizer;
};

/// Fixed one-hot corner centroids, one per class, colored by index.
CentroidSet one_hot_centroids(int n_classes);

/// Trains the one-per-class network with the same kernels as the
/// centroid trainer, xi = 0 and corner centroids held fixed; this is
/// plain MSE backpropagation with L2 decay.
FnnModel fnn_train(const Dataset& data, std::size_t hidden, double eta,
                   double lambda, std::size_t epochs, std::uint64_t seed);

/// Argmax over the output activations; ties go to the lowest class.
int fnn_predict(const FnnModel& model, const Vec& sample);

KnnModel knn_fit(const Dataset& data, std::size_t k);

/// Majority vote among the k nearest training points. Distance ties
/// resolve by training index, vote ties by the lowest class.
int knn_predict(const KnnModel& model, const Vec& sample);

}  // namespace gdfc
