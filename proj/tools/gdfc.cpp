// Benchmark harness CLI: single experiments, grid sweeps, report tables
// and the analytic-vs-numeric gradient check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gdfc/bench.hpp"
#include "gdfc/gradcheck.hpp"
#include "gdfc/model_io.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string manifest = "data/manifest.json";
  std::string results;
  std::string dataset;
  std::string method = "gdfc";
  std::uint64_t seed = 1;
};

struct ConfigOpts {
  std::vector<std::size_t> hidden;
  std::size_t partition_dim = 0;
  std::size_t num_centroids = 0;
  double xi = 0.5;
  double lambda = 1e-6;
  double eta = 0.05;
  double eta_decay = 1.0;
  std::size_t epochs = 500;
  std::size_t recluster_every = 1;
  std::size_t kmeans_max_iters = 300;
  double kmeans_tol = 1e-6;
  bool keep_best = false;
  std::size_t k = 1;  // knn
};

void add_config_flags(CLI::App* cmd, ConfigOpts& cfg) {
  cmd->add_option("--hidden", cfg.hidden, "Hidden layer sizes");
  cmd->add_option("--partition-dim,-Q", cfg.partition_dim,
                  "Partition space dimension (0 = 2N)");
  cmd->add_option("--centroids,-K", cfg.num_centroids,
                  "Number of centroids (0 = 3N)");
  cmd->add_option("--xi", cfg.xi, "Non-self repulsion weight");
  cmd->add_option("--lambda", cfg.lambda, "L2 penalty");
  cmd->add_option("--eta", cfg.eta, "Learning rate");
  cmd->add_option("--eta-decay", cfg.eta_decay, "Per-epoch eta multiplier");
  cmd->add_option("--epochs", cfg.epochs, "Training epochs");
  cmd->add_option("--recluster-every", cfg.recluster_every,
                  "Epochs between k-means refreshes");
  cmd->add_option("--kmeans-max-iters", cfg.kmeans_max_iters, "k-means cap");
  cmd->add_option("--kmeans-tol", cfg.kmeans_tol, "k-means movement tolerance");
  cmd->add_flag("--keep-best", cfg.keep_best,
                "Keep the lowest-training-loss epoch instead of the last");
  cmd->add_option("-k,--neighbors", cfg.k, "Neighbor count (knn)");
}

json config_to_json(const std::string& method, const ConfigOpts& cfg) {
  if (method == "knn") return json{{"k", cfg.k}};
  if (method == "fnn") {
    return json{{"hidden", cfg.hidden.empty() ? 20 : cfg.hidden.front()},
                {"eta", cfg.eta},
                {"lambda", cfg.lambda},
                {"epochs", cfg.epochs}};
  }
  json j{{"partition_dim", cfg.partition_dim},
         {"num_centroids", cfg.num_centroids},
         {"xi", cfg.xi},
         {"lambda", cfg.lambda},
         {"eta", cfg.eta},
         {"eta_decay", cfg.eta_decay},
         {"epochs", cfg.epochs},
         {"recluster_every", cfg.recluster_every},
         {"kmeans_max_iters", cfg.kmeans_max_iters},
         {"kmeans_tol", cfg.kmeans_tol},
         {"keep_best_by_loss", cfg.keep_best}};
  if (!cfg.hidden.empty()) j["hidden_sizes"] = cfg.hidden;
  return j;
}

gdfc::bench::ManifestEntry resolve_dataset(const CommonOpts& opts) {
  const auto manifest = gdfc::bench::load_manifest(opts.manifest);
  const auto it = manifest.find(opts.dataset);
  if (it == manifest.end()) {
    std::string keys;
    for (const auto& [k, _] : manifest) keys += (keys.empty() ? "" : ", ") + k;
    throw std::runtime_error("unknown dataset '" + opts.dataset +
                             "'; manifest has: " + keys);
  }
  return it->second;
}

std::filesystem::path results_dir(const CommonOpts& opts) {
  return opts.results.empty() ? gdfc::bench::results_dir_from_env()
                              : std::filesystem::path(opts.results);
}

void print_row(const gdfc::bench::ResultRow& row) {
  if (row.failed) {
    std::printf("%s %s seed=%llu FAILED: %s\n", row.dataset.c_str(),
                row.method.c_str(), static_cast<unsigned long long>(row.seed),
                row.error.c_str());
    return;
  }
  std::printf("%s %s seed=%llu  GA=%.2f  Avg.FM=%.2f  (%zu folds%s, %.1fs)\n",
              row.dataset.c_str(), row.method.c_str(),
              static_cast<unsigned long long>(row.seed), row.mean_ga,
              row.mean_avg_fm, row.fold_ga.size(),
              row.stratified ? "" : ", unstratified", row.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floating-centroid classifier benchmark harness"};
  app.require_subcommand(1);

  CommonOpts opts;
  ConfigOpts cfg;

  CLI::App* bench = app.add_subcommand("bench", "Benchmark operations");
  bench->require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool needs_dataset) {
    cmd->add_option("--manifest", opts.manifest, "Dataset manifest path");
    cmd->add_option("--results", opts.results,
                    "Results directory (default $GDFC_RESULTS_DIR or ./results)");
    cmd->add_option("--seed", opts.seed, "Master seed");
    if (needs_dataset) {
      cmd->add_option("--dataset", opts.dataset, "Dataset key")->required();
      cmd->add_option("--method", opts.method, "gdfc | fnn | knn");
    }
  };

  CLI::App* run = bench->add_subcommand("run", "Ten-fold CV of one config");
  add_common(run, true);
  add_config_flags(run, cfg);

  CLI::App* sweep = bench->add_subcommand("sweep", "Seeded grid search");
  add_common(sweep, true);
  std::size_t budget = 16;
  std::string grids_arg;
  sweep->add_option("--budget", budget, "Max grid points to evaluate");
  sweep->add_option("--grids", grids_arg,
                    "Grid JSON (inline or @file); default built from ranges");

  CLI::App* report = bench->add_subcommand("report", "Emit comparison tables");
  add_common(report, false);
  bool no_cited = false;
  report->add_flag("--no-cited", no_cited, "Omit published baseline columns");

  CLI::App* gradcheck =
      bench->add_subcommand("gradcheck", "Finite-difference gradient audit");
  std::uint64_t gc_seed = 7;
  std::size_t gc_archs = 10;
  gradcheck->add_option("--seed", gc_seed, "Seed");
  gradcheck->add_option("--architectures", gc_archs, "Random architectures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto entry = resolve_dataset(opts);
      const auto row = gdfc::bench::run_experiment(
          entry, opts.method, config_to_json(opts.method, cfg), opts.seed);
      print_row(row);
      gdfc::bench::append_result(results_dir(opts), row);
      return row.failed ? 1 : 0;
    }
    if (sweep->parsed()) {
      const auto entry = resolve_dataset(opts);
      const auto data = gdfc::bench::load_dataset(entry);
      gdfc::bench::SweepSpec spec;
      spec.dataset = opts.dataset;
      spec.method = opts.method;
      spec.budget = budget;
      spec.seed = opts.seed;
      if (grids_arg.empty()) {
        spec.grids = gdfc::bench::default_grids(opts.method, data.num_classes);
      } else if (grids_arg.front() == '@') {
        std::ifstream in(grids_arg.substr(1));
        spec.grids = json::parse(in);
      } else {
        spec.grids = json::parse(grids_arg);
      }
      const auto result = gdfc::bench::run_sweep(data, opts.dataset, spec);
      std::printf("evaluated %zu grid points; best config: %s\n",
                  result.log.size(), result.best_config.dump().c_str());
      print_row(result.best);
      gdfc::bench::append_result(results_dir(opts), result.best);
      return result.best.failed ? 1 : 0;
    }
    if (report->parsed()) {
      const auto dir = results_dir(opts);
      const auto rows = gdfc::bench::read_results(dir);
      const auto rep = gdfc::bench::emit_report(rows, !no_cited);
      gdfc::bench::write_report(dir, rep);
      std::cout << rep.text;
      return 0;
    }
    if (gradcheck->parsed()) {
      const auto rep = gdfc::run_gradient_check(gc_seed, gc_archs);
      std::printf("gradcheck: %zu architectures, %zu parameters, "
                  "max rel err %.3e -> %s\n",
                  rep.architectures, rep.parameters_checked, rep.max_rel_err,
                  rep.pass ? "PASS" : "FAIL");
      if (!rep.pass) std::printf("worst: %s\n", rep.worst_case.c_str());
      return rep.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
