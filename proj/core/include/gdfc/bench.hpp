#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdfc/dataset.hpp"
#include "gdfc/metrics.hpp"

namespace gdfc::bench {

struct ManifestEntry {
  std::string key;
  std::string name;  // display name
  std::filesystem::path file;
  CsvSchema schema;
};

using Manifest = std::map<std::string, ManifestEntry>;

/// Reads a dataset manifest (JSON object keyed by dataset abbreviation).
/// Relative file paths resolve against the manifest's directory.
Manifest load_manifest(const std::filesystem::path& path);

Dataset load_dataset(const ManifestEntry& entry);

struct ResultRow {
  std::string dataset;
  std::string method;
  std::string config_hash;
  std::uint64_t seed = 0;
  double mean_ga = 0.0;
  double mean_avg_fm = 0.0;
  std::vector<double> fold_ga;
  std::vector<double> fold_fm;
  bool stratified = true;
  bool failed = false;
  std::string error;
  double wall_seconds = 0.0;
  nlohmann::json config;
};

/// FNV-1a over the canonical (sorted-key) config dump.
std::string config_hash(const nlohmann::json& config);

/// Builds the per-fold trainer for one of the implemented methods:
/// "gdfc", "fnn", "knn". Each trainer fits a min-max normalizer on its
/// training fold only.
TrainerFn make_trainer(const std::string& method,
                       const nlohmann::json& config);

/// Ten-fold cross-validation of one (dataset, method, config, seed)
/// cell. Training divergence is recorded as a failed row instead of
/// propagating.
ResultRow run_experiment(const Dataset& data, const std::string& dataset_key,
                         const std::string& method,
                         const nlohmann::json& config, std::uint64_t seed);

ResultRow run_experiment(const ManifestEntry& entry, const std::string& method,
                         const nlohmann::json& config, std::uint64_t seed);

struct SweepSpec {
  std::string dataset;
  std::string method;
  /// Per-field value lists; the sweep enumerates their cartesian product.
  nlohmann::json grids;
  std::size_t budget = 16;
  std::uint64_t seed = 0;
};

/// Default search grids for a dataset with n_classes classes:
/// hidden widths up to 40, partition dimension up to 10N, centroid
/// count up to 5N, plus xi/lambda/eta lists for the centroid method.
nlohmann::json default_grids(const std::string& method, int n_classes);

struct SweepPoint {
  nlohmann::json config;
  double inner_ga = 0.0;
};

struct SweepResult {
  ResultRow best;
  nlohmann::json best_config;
  std::vector<SweepPoint> log;
};

/// Seeded grid search: enumerates the grid (uniformly subsampled without
/// replacement when it exceeds the budget), scores each point by GA on a
/// stratified inner 75/25 holdout, then reports outer ten-fold CV for
/// the winner.
SweepResult run_sweep(const Dataset& data, const std::string& dataset_key,
                      const SweepSpec& spec);

// --- Results store (append-only; reruns of an identical cell are skipped) ---

std::filesystem::path results_dir_from_env();
bool append_result(const std::filesystem::path& dir, const ResultRow& row);
std::vector<ResultRow> read_results(const std::filesystem::path& dir);

// --- Report emission -------------------------------------------------------

struct Report {
  std::string ga_csv;
  std::string fm_csv;
  std::string text;
};

/// Datasets x methods tables for GA and Avg.FM with a MEAN row.
/// `include_cited` adds published reference columns for the
/// non-implemented baselines, flagged [cited].
Report emit_report(const std::vector<ResultRow>& rows, bool include_cited);

void write_report(const std::filesystem::path& dir, const Report& report);

}  // namespace gdfc::bench
