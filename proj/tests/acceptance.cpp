// Acceptance gate: seven pass/fail criteria, one ctest entry each.
// Every criterion prints exactly one [PASS]/[FAIL] summary line; the
// tolerances and pinned configurations live here, not in flags.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "gdfc/baselines.hpp"
#include "gdfc/bench.hpp"
#include "gdfc/gradcheck.hpp"
#include "gdfc/metrics.hpp"
#include "gdfc/trainer.hpp"
#include "mse_oracle.hpp"
#include "test_util.hpp"

using namespace gdfc;
using nlohmann::json;

namespace {

struct Gate {
  int criterion;
  std::string description;
  std::vector<std::string> failures;

  Gate(int n, std::string what) : criterion(n), description(std::move(what)) {}

  void require(bool ok, const std::string& detail) {
    if (!ok) failures.push_back(detail);
  }

  ~Gate() {
    if (failures.empty()) {
      std::printf("[PASS] criterion %d: %s\n", criterion, description.c_str());
    } else {
      std::printf("[FAIL] criterion %d: %s\n", criterion, description.c_str());
      for (const auto& f : failures) std::printf("       - %s\n", f.c_str());
    }
    std::fflush(stdout);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bench::Manifest manifest() {
  return bench::load_manifest(std::string(GDFC_DATA_DIR) + "/manifest.json");
}

}  // namespace

TEST_CASE("criterion-1-gradient-correctness") {
  Gate gate(1, "analytic gradients match finite differences (rel 1e-5, "
               ">=10 architectures, <10s)");
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_gradient_check(42, 12, 1e-5, 1e-7, 1e-5);
  const double wall = seconds_since(start);

  gate.require(report.architectures >= 10, "fewer than 10 architectures");
  gate.require(report.pass, "worst case exceeded tolerance: " + report.worst_case);
  gate.require(report.max_rel_err <= 1e-5,
               "max relative error " + std::to_string(report.max_rel_err));
  gate.require(wall < 10.0, "runtime " + std::to_string(wall) + "s >= 10s");
  CHECK(gate.failures.empty());
}

TEST_CASE("criterion-2-reduction-equivalence") {
  Gate gate(2, "xi=0 + one-hot corners reproduces the MSE backprop oracle "
               "to 1e-12 over 10 steps (<1s)");
  const auto start = std::chrono::steady_clock::now();

  const auto data = gdfc::test::make_blobs(10, 66);
  const double eta = 0.4, lambda = 1e-3;
  auto net = init_network({2, 5, 2}, Activation::Sigmoid, 501);
  mse_oracle::Net ref;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    mse_oracle::M wl(net.weights[l].rows, mse_oracle::V(net.weights[l].cols));
    for (std::size_t q = 0; q < net.weights[l].rows; ++q)
      for (std::size_t h = 0; h < net.weights[l].cols; ++h)
        wl[q][h] = net.weights[l](q, h);
    ref.w.push_back(wl);
    ref.b.push_back(net.biases[l]);
  }

  const auto corners = one_hot_centroids(2);
  for (int step = 0; step < 10; ++step) {
    const std::size_t i = static_cast<std::size_t>(step) % data.size();
    const Vec x = data.row(i);
    const int label = data.labels[i];
    const auto trace = forward(net, x);
    const Vec& cs = corners.centroids[label].position;
    const Vec& cn = corners.centroids[1 - label].position;
    const auto dout = output_delta(trace, cs, cn, 0.0);
    net = apply_updates(net, backward(net, trace, dout), eta, lambda);

    mse_oracle::V target(2, 0.0);
    target[label] = 1.0;
    mse_oracle::step(ref, x, target, eta, lambda);
  }

  double max_diff = 0.0;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    for (std::size_t q = 0; q < net.weights[l].rows; ++q) {
      for (std::size_t h = 0; h < net.weights[l].cols; ++h) {
        max_diff = std::max(max_diff,
                            std::abs(net.weights[l](q, h) - ref.w[l][q][h]));
      }
      max_diff = std::max(max_diff, std::abs(net.biases[l][q] - ref.b[l][q]));
    }
  }
  const double wall = seconds_since(start);
  gate.require(max_diff <= 1e-12,
               "max parameter difference " + std::to_string(max_diff));
  gate.require(wall < 1.0, "runtime " + std::to_string(wall) + "s >= 1s");
  CHECK(gate.failures.empty());
}

TEST_CASE("criterion-3-nearest-oracles") {
  Gate gate(3, "centroid queries and knn agree with exhaustive scans on "
               "1000 randomized instances (<5s)");
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1234);
  std::size_t mismatches = 0;

  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + rng.index(12);
    const std::size_t dim = 1 + rng.index(5);
    CentroidSet set;
    set.dimension = dim;
    set.num_classes = 3;
    std::vector<int> colors;
    for (std::size_t i = 0; i < n; ++i) {
      Vec p(dim);
      for (double& x : p) x = rng.uniform();
      const int color = i < 3 ? static_cast<int>(i) : static_cast<int>(rng.index(3));
      set.centroids.push_back({std::move(p), color, 1});
      colors.push_back(color);
    }
    Vec query(dim);
    for (double& x : query) x = rng.uniform();
    const int label = static_cast<int>(rng.index(3));

    auto brute = [&](auto keep) {
      std::size_t best = n;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (!keep(colors[i])) continue;
        const double d = squared_distance(query, set.centroids[i].position);
        if (d < best_d) { best_d = d; best = i; }
      }
      return &set.centroids[best];
    };
    if (&nearest_self(query, set, label) !=
        brute([&](int c) { return c == label; })) ++mismatches;
    if (&nearest_noself(query, set, label) !=
        brute([&](int c) { return c != label; })) ++mismatches;
    if (&nearest_any(query, set) != brute([](int) { return true; }))
      ++mismatches;
  }

  const auto data = gdfc::test::make_blobs(40, 99, 0.4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + rng.index(30);
    const auto model = knn_fit(data, k);
    Vec q{rng.uniform(), rng.uniform()};
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < data.size(); ++i) {
      order.emplace_back(squared_distance(q, data.row(i)), i);
    }
    std::sort(order.begin(), order.end());
    int votes[2] = {0, 0};
    for (std::size_t i = 0; i < k; ++i) ++votes[data.labels[order[i].second]];
    const int want = votes[1] > votes[0] ? 1 : 0;
    if (knn_predict(model, q) != want) ++mismatches;
  }

  const double wall = seconds_since(start);
  gate.require(mismatches == 0,
               std::to_string(mismatches) + " mismatches vs brute force");
  gate.require(wall < 5.0, "runtime " + std::to_string(wall) + "s >= 5s");
  CHECK(gate.failures.empty());
}

TEST_CASE("criterion-4-metric-unit-values") {
  Gate gate(4, "GA and Avg.FM reproduce the hand-computed examples exactly");

  const double ga = generalization_accuracy({0, 1, 1, 0, 1, 0, 0, 1, 1, 0},
                                            {0, 1, 1, 0, 1, 0, 0, 1, 0, 1});
  gate.require(ga == 80.0, "GA(8/10) = " + std::to_string(ga) + ", want 80");

  std::vector<int> truth, preds;  // confusion [[5,5],[0,10]]
  for (int i = 0; i < 5; ++i) { truth.push_back(0); preds.push_back(0); }
  for (int i = 0; i < 5; ++i) { truth.push_back(0); preds.push_back(1); }
  for (int i = 0; i < 10; ++i) { truth.push_back(1); preds.push_back(1); }
  const double fm = avg_f_measure(preds, truth, 2);
  const double want = 100.0 * (2.0 / 3.0 + 0.8) / 2.0;  // 73.333...
  gate.require(std::abs(fm - want) <= 1e-12,
               "Avg.FM = " + std::to_string(fm) + ", want " + std::to_string(want));
  CHECK(gate.failures.empty());
}

TEST_CASE("criterion-5-desk-scale-reproduction") {
  Gate gate(5, "tuned ten-fold GA: Wine >= 94.9, Balance >= 92.3, UKM >= 92.2");
  const auto mf = manifest();

  // Configurations found by seeded sweeps over the documented ranges,
  // pinned here for reproducibility (master seed 1 throughout).
  const json tuned{{"hidden_sizes", {40}}, {"partition_dim", 30},
                   {"num_centroids", 9},   {"xi", 0.1},
                   {"lambda", 0.0},        {"eta", 0.2},
                   {"epochs", 300}};

  struct Target { const char* key; double threshold; };
  for (const Target t : {Target{"wine", 94.9}, Target{"balance", 92.3},
                         Target{"ukm", 92.2}}) {
    if (!std::filesystem::exists(mf.at(t.key).file)) {
      gate.require(false,
                   std::string(t.key) + ": dataset file not present (" +
                       mf.at(t.key).file.string() +
                       "); no offline source for this corpus, so this "
                       "sub-check cannot run and is reported as failed");
      continue;
    }
    const auto row = bench::run_experiment(mf.at(t.key), "gdfc", tuned, 1);
    if (row.failed) {
      gate.require(false, std::string(t.key) + ": training failed: " + row.error);
      continue;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: GA %.4f below threshold %.1f",
                  t.key, row.mean_ga, t.threshold);
    gate.require(row.mean_ga >= t.threshold, buf);
    std::printf("       %s: mean GA %.4f (threshold %.1f)\n", t.key,
                row.mean_ga, t.threshold);
  }
  CHECK(gate.failures.empty());
}

TEST_CASE("criterion-6-ordering-sanity") {
  Gate gate(6, "GDFC mean GA >= FNN mean GA on >= 3 of 5 datasets under "
               "equal sweep budgets");
  const auto mf = manifest();
  int wins = 0, run = 0;

  for (const char* key : {"wine", "balance", "blobs9", "rings", "xorblobs"}) {
    const auto data = bench::load_dataset(mf.at(key));
    const int n = data.num_classes;
    // Eight grid points per method, identical budget and master seed.
    const json gdfc_grid{{"hidden", {20, 40}},
                         {"partition_dim", {10 * n}},
                         {"num_centroids", {3 * n}},
                         {"xi", {0.1, 0.5}},
                         {"eta", {0.2, 0.5}},
                         {"lambda", {0.0}},
                         {"epochs", {300}}};
    const json fnn_grid{{"hidden", {5, 10, 20, 40}},
                        {"eta", {0.2, 0.5}},
                        {"lambda", {0.0}},
                        {"epochs", {300}}};
    bench::SweepSpec gspec{key, "gdfc", gdfc_grid, 8, 1};
    bench::SweepSpec fspec{key, "fnn", fnn_grid, 8, 1};
    const auto g = bench::run_sweep(data, key, gspec);
    const auto f = bench::run_sweep(data, key, fspec);
    ++run;
    if (g.best.mean_ga >= f.best.mean_ga) ++wins;
    std::printf("       %-9s gdfc %.4f vs fnn %.4f -> %s\n", key,
                g.best.mean_ga, f.best.mean_ga,
                g.best.mean_ga >= f.best.mean_ga ? "gdfc" : "fnn");
  }
  gate.require(run == 5, "expected 5 datasets, ran " + std::to_string(run));
  gate.require(wins >= 3,
               "gdfc >= fnn on only " + std::to_string(wins) + " of 5");
  CHECK(gate.failures.empty());
}

TEST_CASE("criterion-7-pipeline-invariants") {
  Gate gate(7, "fold exactness, leakage sentinel, run determinism, "
               "divergence guard");
  const auto mf = manifest();

  {  // Fold partition exactness on a real dataset.
    const auto data = bench::load_dataset(mf.at("balance"));
    const auto folds =
        stratified_folds(data.labels, data.num_classes, 10, 77);
    std::vector<int> seen(data.size(), 0);
    for (const auto& fold : folds)
      for (std::size_t i : fold) ++seen[i];
    bool exact = true;
    for (int c : seen) exact = exact && c == 1;
    gate.require(exact, "fold partition is not an exact cover");
  }

  {  // Leakage sentinel: the training fold never contains held-out rows.
    auto data = gdfc::test::make_blobs(50, 31);
    data.features(42, 0) = 1e6;
    std::vector<double> train_max;
    const TrainerFn trainer = [&](const Dataset& train,
                                  std::uint64_t) -> Classifier {
      double mx = -1e18;
      for (double v : train.features.data) mx = std::max(mx, v);
      train_max.push_back(mx);
      return [](const Vec&) { return 0; };
    };
    ten_fold_cv(data, trainer, 12);
    int with = 0;
    for (double mx : train_max)
      if (mx == 1e6) ++with;
    gate.require(train_max.size() == 10 && with == 9,
                 "sentinel visible in " + std::to_string(with) +
                     " training folds, want 9 of 10");
  }

  {  // Full-run determinism: identical seeds give a byte-identical report.
    const auto data = bench::load_dataset(mf.at("wine"));
    const json config{{"hidden_sizes", {10}}, {"partition_dim", 6},
                      {"num_centroids", 9},   {"epochs", 40},
                      {"eta", 0.2},           {"lambda", 0.0},
                      {"xi", 0.5}};
    const auto a = bench::run_experiment(data, "wine", "gdfc", config, 3);
    const auto b = bench::run_experiment(data, "wine", "gdfc", config, 3);
    const auto ra = bench::emit_report({a}, true);
    const auto rb = bench::emit_report({b}, true);
    gate.require(ra.ga_csv == rb.ga_csv && ra.fm_csv == rb.fm_csv &&
                     ra.text == rb.text,
                 "repeated bench run is not byte-identical");
    gate.require(a.fold_ga == b.fold_ga, "per-fold GA differs across reruns");
  }

  {  // Divergence guard: eta = 10 must fail with the dedicated error.
    const auto data = gdfc::test::make_blobs(15, 6);
    TrainConfig cfg;
    cfg.hidden_sizes = {8};
    cfg.partition_dim = 4;
    cfg.num_centroids = 4;
    cfg.eta = 10.0;
    cfg.lambda = 0.5;
    cfg.epochs = 200;
    cfg.seed = 2;
    bool threw_divergence = false;
    try {
      train(data, cfg);
    } catch (const DivergenceError&) {
      threw_divergence = true;
    } catch (...) {
    }
    gate.require(threw_divergence,
                 "training at eta=10 did not raise DivergenceError");

    const json config{{"hidden_sizes", {8}}, {"partition_dim", 4},
                      {"num_centroids", 4},  {"epochs", 100},
                      {"eta", 10.0},         {"lambda", 0.5}};
    const auto row = bench::run_experiment(gdfc::test::make_blobs(25, 3),
                                           "blobs", "gdfc", config, 2);
    gate.require(row.failed && !row.error.empty(),
                 "diverging bench run was not recorded as a failed row");
  }
  CHECK(gate.failures.empty());
}
