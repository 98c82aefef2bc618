#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gdfc/dataset.hpp"
#include "gdfc/types.hpp"

namespace gdfc {

struct ConfusionMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> counts;  // row-major, rows = truth, cols = predicted

  explicit ConfusionMatrix(std::size_t n_classes = 0)
      : n(n_classes), counts(n_classes * n_classes, 0) {}

  std::size_t& at(std::size_t truth, std::size_t pred) {
    return counts[truth * n + pred];
  }
  std::size_t at(std::size_t truth, std::size_t pred) const {
    return counts[truth * n + pred];
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (std::size_t c : counts) t += c;
    return t;
  }
};

ConfusionMatrix confusion_matrix(const std::vector<int>& preds,
                                 const std::vector<int>& truth, int n_classes);

/// Percentage of correct predictions.
double generalization_accuracy(const std::vector<int>& preds,
                               const std::vector<int>& truth);

/// Macro-averaged per-class F1, in percent. A class whose precision or
/// recall is 0/0 contributes F1 = 0. `micro` switches to the
/// micro-averaged variant for sensitivity checks.
double avg_f_measure(const std::vector<int>& preds,
                     const std::vector<int>& truth, int n_classes,
                     bool micro = false);

struct FoldResult {
  double ga = 0.0;
  double avg_fm = 0.0;
  ConfusionMatrix confusion;
};

struct EvalReport {
  std::vector<FoldResult> per_fold;
  double mean_ga = 0.0;
  double mean_avg_fm = 0.0;
  bool stratified = true;
};

/// Trained classifier over raw (un-normalized) samples. A trainer is
/// responsible for fitting its own normalizer on the training fold, so
/// no statistics can leak from held-out data.
using Classifier = std::function<int(const Vec&)>;
using TrainerFn =
    std::function<Classifier(const Dataset& train, std::uint64_t fold_seed)>;

/// Seeded stratified folds: per-class round-robin deal after a per-class
/// shuffle. Falls back to plain random folds (stratified=false) when
/// some class has fewer samples than folds.
std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<int>& labels, int n_classes, std::size_t n_folds,
    std::uint64_t seed, bool* stratified = nullptr);

EvalReport ten_fold_cv(const Dataset& data, const TrainerFn& trainer,
                       std::uint64_t seed, std::size_t n_folds = 10);

}  // namespace gdfc
