#include "gdfc/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gdfc {

ConfusionMatrix confusion_matrix(const std::vector<int>& preds,
                                 const std::vector<int>& truth, int n_classes) {
  if (preds.size() != truth.size()) {
    throw std::invalid_argument("confusion_matrix: length mismatch");
  }
  ConfusionMatrix cm(static_cast<std::size_t>(n_classes));
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= n_classes || preds[i] < 0 ||
        preds[i] >= n_classes) {
      throw std::invalid_argument("confusion_matrix: label out of range");
    }
    ++cm.at(truth[i], preds[i]);
  }
  return cm;
}

double generalization_accuracy(const std::vector<int>& preds,
                               const std::vector<int>& truth) {
  if (preds.empty() || preds.size() != truth.size()) {
    throw std::invalid_argument("generalization_accuracy: bad input lengths");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] == truth[i]) ++correct;
  }
  return 100.0 * static_cast<double>(correct) /
         static_cast<double>(preds.size());
}

double avg_f_measure(const std::vector<int>& preds,
                     const std::vector<int>& truth, int n_classes,
                     bool micro) {
  if (preds.empty()) throw std::invalid_argument("avg_f_measure: empty input");
  const ConfusionMatrix cm = confusion_matrix(preds, truth, n_classes);

  if (micro) {
    // With single-label predictions micro-F1 equals accuracy.
    std::size_t tp = 0;
    for (int c = 0; c < n_classes; ++c) tp += cm.at(c, c);
    return 100.0 * static_cast<double>(tp) / static_cast<double>(cm.total());
  }

  double sum_f1 = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    std::size_t tp = cm.at(c, c), fp = 0, fn = 0;
    for (int o = 0; o < n_classes; ++o) {
      if (o == c) continue;
      fp += cm.at(o, c);
      fn += cm.at(c, o);
    }
    const double denom_p = static_cast<double>(tp + fp);
    const double denom_r = static_cast<double>(tp + fn);
    if (tp == 0) continue;  // 0/0 precision or recall: F1 = 0
    const double prec = static_cast<double>(tp) / denom_p;
    const double rec = static_cast<double>(tp) / denom_r;
    sum_f1 += 2.0 * prec * rec / (prec + rec);
  }
  return 100.0 * sum_f1 / static_cast<double>(n_classes);
}

std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<int>& labels, int n_classes, std::size_t n_folds,
    std::uint64_t seed, bool* stratified) {
  if (labels.size() < n_folds) {
    throw std::invalid_argument("stratified_folds: fewer samples than folds");
  }
  std::vector<std::vector<std::size_t>> by_class(n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= n_classes) {
      throw std::invalid_argument("stratified_folds: label out of range");
    }
    by_class[labels[i]].push_back(i);
  }
  for (const auto& g : by_class) {
    if (g.empty()) {
      throw std::invalid_argument("stratified_folds: class with zero samples");
    }
  }

  bool can_stratify = true;
  for (const auto& g : by_class) {
    if (g.size() < n_folds) can_stratify = false;
  }
  if (stratified) *stratified = can_stratify;

  Rng rng(mix_seed(seed, 0xf01d));
  std::vector<std::vector<std::size_t>> folds(n_folds);
  if (can_stratify) {
    std::size_t cursor = 0;
    for (auto& g : by_class) {
      rng.shuffle(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        folds[(cursor + i) % n_folds].push_back(g[i]);
      }
      cursor = (cursor + g.size()) % n_folds;
    }
  } else {
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      folds[i % n_folds].push_back(order[i]);
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

EvalReport ten_fold_cv(const Dataset& data, const TrainerFn& trainer,
                       std::uint64_t seed, std::size_t n_folds) {
  EvalReport report;
  const auto folds = stratified_folds(data.labels, data.num_classes, n_folds,
                                      seed, &report.stratified);

  for (std::size_t f = 0; f < n_folds; ++f) {
    std::vector<std::size_t> train_rows;
    for (std::size_t g = 0; g < n_folds; ++g) {
      if (g == f) continue;
      train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_rows.begin(), train_rows.end());

    const Dataset train = select_rows(data, train_rows);
    const Classifier clf = trainer(train, mix_seed(seed, 100 + f));

    std::vector<int> preds, truth;
    for (std::size_t i : folds[f]) {
      preds.push_back(clf(data.row(i)));
      truth.push_back(data.labels[i]);
    }
    FoldResult fr;
    fr.ga = generalization_accuracy(preds, truth);
    fr.avg_fm = avg_f_measure(preds, truth, data.num_classes);
    fr.confusion = confusion_matrix(preds, truth, data.num_classes);
    report.per_fold.push_back(std::move(fr));
  }

  for (const FoldResult& fr : report.per_fold) {
    report.mean_ga += fr.ga;
    report.mean_avg_fm += fr.avg_fm;
  }
  report.mean_ga /= static_cast<double>(n_folds);
  report.mean_avg_fm /= static_cast<double>(n_folds);
  return report;
}

}  // namespace gdfc
