#include "gdfc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gdfc/baselines.hpp"
#include "gdfc/model_io.hpp"
#include "gdfc/trainer.hpp"

namespace gdfc::bench {

using nlohmann::json;

namespace {

// Published reference numbers for the baselines this artifact does not
// reimplement, keyed by dataset abbreviation: {GA, Avg.FM} per method.
struct CitedCell {
  double ga;
  double fm;
};
const std::map<std::string, std::map<std::string, CitedCell>>& cited_table() {
  static const std::map<std::string, std::map<std::string, CitedCell>> table = {
      {"diabetes", {{"NNP", {75.0, 73.25}}, {"FCM", {77.75, 72.21}}}},
      {"vote", {{"NNP", {92.9, 92.9}}, {"FCM", {92.9, 92.9}}}},
      {"rfcc", {{"NNP", {87.06, 77.23}}, {"FCM", {90.0, 72.65}}}},
      {"spect", {{"NNP", {78.21, 68.12}}, {"FCM", {80.71, 67.46}}}},
      {"cmsc", {{"NNP", {92.73, 77.95}}, {"FCM", {94.0, 75.84}}}},
      {"web", {{"NNP", {84.5, 81.4}}, {"FCM", {85.11, 66.55}}}},
      {"hr", {{"NNP", {79.44, 80.46}}, {"FCM", {77.22, 77.24}}}},
      {"balance", {{"NNP", {94.6, 90.23}}, {"FCM", {95.87, 92.81}}}},
      {"wine", {{"NNP", {98.89, 98.97}}, {"FCM", {98.89, 98.88}}}},
      {"ukm", {{"NNP", {95.24, 94.88}}, {"FCM", {95.95, 96.11}}}},
  };
  return table;
}

json row_to_json(const ResultRow& row) {
  return json{{"dataset", row.dataset},
              {"method", row.method},
              {"config_hash", row.config_hash},
              {"seed", row.seed},
              {"mean_ga", row.mean_ga},
              {"mean_avg_fm", row.mean_avg_fm},
              {"fold_ga", row.fold_ga},
              {"fold_fm", row.fold_fm},
              {"stratified", row.stratified},
              {"failed", row.failed},
              {"error", row.error},
              {"wall_seconds", row.wall_seconds},
              {"config", row.config}};
}

ResultRow row_from_json(const json& j) {
  ResultRow row;
  row.dataset = j.at("dataset").get<std::string>();
  row.method = j.at("method").get<std::string>();
  row.config_hash = j.at("config_hash").get<std::string>();
  row.seed = j.at("seed").get<std::uint64_t>();
  row.mean_ga = j.at("mean_ga").get<double>();
  row.mean_avg_fm = j.at("mean_avg_fm").get<double>();
  row.fold_ga = j.at("fold_ga").get<std::vector<double>>();
  row.fold_fm = j.at("fold_fm").get<std::vector<double>>();
  row.stratified = j.at("stratified").get<bool>();
  row.failed = j.at("failed").get<bool>();
  row.error = j.at("error").get<std::string>();
  row.wall_seconds = j.at("wall_seconds").get<double>();
  row.config = j.at("config");
  return row;
}

std::string row_key(const ResultRow& row) {
  return row.dataset + "|" + row.method + "|" + row.config_hash + "|" +
         std::to_string(row.seed);
}

std::string format_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_manifest: cannot open " + path.string());
  }
  const json j = json::parse(in);
  Manifest manifest;
  for (const auto& [key, val] : j.items()) {
    ManifestEntry entry;
    entry.key = key;
    entry.name = val.value("name", key);
    entry.file = val.at("file").get<std::string>();
    if (entry.file.is_relative()) {
      entry.file = path.parent_path() / entry.file;
    }
    entry.schema.label_column = val.at("label").get<std::string>();
    entry.schema.delimiter = val.value("delimiter", ",")[0];
    entry.schema.header = val.value("header", true);
    entry.schema.missing_marker = val.value("missing", "?");
    manifest.emplace(key, std::move(entry));
  }
  return manifest;
}

Dataset load_dataset(const ManifestEntry& entry) {
  return load_csv(entry.file, entry.schema);
}

std::string config_hash(const json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TrainerFn make_trainer(const std::string& method, const json& config) {
  if (method == "gdfc") {
    TrainConfig cfg = train_config_from_json(config);
    return [cfg](const Dataset& fold, std::uint64_t fold_seed) -> Classifier {
      const Normalizer stats = fit_normalizer(fold, Normalizer::Kind::MinMax);
      TrainConfig fold_cfg = cfg;
      fold_cfg.seed = fold_seed;
      GdfcModel model = train(apply_normalizer(fold, stats), fold_cfg);
      return [model = std::move(model), stats](const Vec& raw) {
        return predict(model, normalize_sample(raw, stats));
      };
    };
  }
  if (method == "fnn") {
    const std::size_t hidden = config.value("hidden", 20);
    const double eta = config.value("eta", 0.05);
    const double lambda = config.value("lambda", 1e-6);
    const std::size_t epochs = config.value("epochs", 300);
    return [=](const Dataset& train, std::uint64_t fold_seed) -> Classifier {
      const Normalizer stats = fit_normalizer(train, Normalizer::Kind::MinMax);
      FnnModel model = fnn_train(apply_normalizer(train, stats), hidden, eta,
                                 lambda, epochs, fold_seed);
      return [model = std::move(model), stats](const Vec& raw) {
        return fnn_predict(model, normalize_sample(raw, stats));
      };
    };
  }
  if (method == "knn") {
    const std::size_t k = config.value("k", 1);
    return [k](const Dataset& train, std::uint64_t) -> Classifier {
      const Normalizer stats = fit_normalizer(train, Normalizer::Kind::MinMax);
      KnnModel model = knn_fit(apply_normalizer(train, stats), k);
      return [model = std::move(model), stats](const Vec& raw) {
        return knn_predict(model, normalize_sample(raw, stats));
      };
    };
  }
  throw std::invalid_argument("unknown method '" + method +
                              "' (have: gdfc, fnn, knn)");
}

ResultRow run_experiment(const Dataset& data, const std::string& dataset_key,
                         const std::string& method, const json& config,
                         std::uint64_t seed) {
  ResultRow row;
  row.dataset = dataset_key;
  row.method = method;
  row.config = config;
  row.config_hash = config_hash(config);
  row.seed = seed;

  const auto start = std::chrono::steady_clock::now();
  try {
    const EvalReport report = ten_fold_cv(data, make_trainer(method, config), seed);
    row.mean_ga = report.mean_ga;
    row.mean_avg_fm = report.mean_avg_fm;
    row.stratified = report.stratified;
    for (const FoldResult& fr : report.per_fold) {
      row.fold_ga.push_back(fr.ga);
      row.fold_fm.push_back(fr.avg_fm);
    }
  } catch (const DivergenceError& e) {
    row.failed = true;
    row.error = e.what();
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

ResultRow run_experiment(const ManifestEntry& entry, const std::string& method,
                         const json& config, std::uint64_t seed) {
  return run_experiment(load_dataset(entry), entry.key, method, config, seed);
}

json default_grids(const std::string& method, int n_classes) {
  const int n = n_classes;
  if (method == "gdfc") {
    return json{{"hidden", {5, 10, 20, 40}},
                {"partition_dim", {n, 2 * n, 4 * n, 8 * n}},
                {"num_centroids", {n, 2 * n, 3 * n, 5 * n}},
                {"xi", {0.1, 0.5, 1.0}},
                {"lambda", {0.0, 1e-6}},
                {"eta", {0.05, 0.1}}};
  }
  if (method == "fnn") {
    return json{{"hidden", {2, 5, 10, 20, 30, 40}},
                {"eta", {0.05, 0.1}},
                {"lambda", {0.0, 1e-6}}};
  }
  if (method == "knn") {
    return json{{"k", {1, 3, 5, 7, 9, 11, 15, 21, 25, 30}}};
  }
  throw std::invalid_argument("default_grids: unknown method " + method);
}

namespace {

std::vector<json> enumerate_grid(const json& grids) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : grids.items()) {
    if (!v.is_array() || v.empty()) {
      throw std::invalid_argument("run_sweep: grid '" + k +
                                  "' must be a non-empty list");
    }
    keys.push_back(k);
  }
  if (keys.empty()) throw std::invalid_argument("run_sweep: empty grid");

  std::vector<json> configs{json::object()};
  for (const std::string& k : keys) {
    std::vector<json> next;
    for (const json& base : configs) {
      for (const json& v : grids.at(k)) {
        json cfg = base;
        if (k == "hidden") {
          // scalar width shorthand for a single hidden layer
          cfg["hidden_sizes"] = json::array({v});
          cfg["hidden"] = v;
        } else {
          cfg[k] = v;
        }
        next.push_back(std::move(cfg));
      }
    }
    configs = std::move(next);
  }
  return configs;
}

}  // namespace

SweepResult run_sweep(const Dataset& data, const std::string& dataset_key,
                      const SweepSpec& spec) {
  std::vector<json> configs = enumerate_grid(spec.grids);
  if (spec.budget < 1) throw std::invalid_argument("run_sweep: budget must be >= 1");

  if (configs.size() > spec.budget) {
    Rng rng(mix_seed(spec.seed, 0x5eed));
    rng.shuffle(configs);
    configs.resize(spec.budget);
  }

  // Inner model selection: stratified 75/25 holdout on the full data.
  const auto inner_folds = stratified_folds(
      data.labels, data.num_classes, 4, mix_seed(spec.seed, 0xa));
  std::vector<std::size_t> inner_train;
  for (std::size_t f = 1; f < inner_folds.size(); ++f) {
    inner_train.insert(inner_train.end(), inner_folds[f].begin(),
                       inner_folds[f].end());
  }
  std::sort(inner_train.begin(), inner_train.end());
  const Dataset train_part = select_rows(data, inner_train);

  SweepResult result;
  double best_ga = -1.0;
  for (const json& config : configs) {
    SweepPoint point;
    point.config = config;
    try {
      const Classifier clf = make_trainer(spec.method, config)(
          train_part, mix_seed(spec.seed, 0xb));
      std::vector<int> preds, truth;
      for (std::size_t i : inner_folds[0]) {
        preds.push_back(clf(data.row(i)));
        truth.push_back(data.labels[i]);
      }
      point.inner_ga = generalization_accuracy(preds, truth);
    } catch (const DivergenceError&) {
      point.inner_ga = -1.0;
    }
    if (point.inner_ga > best_ga) {
      best_ga = point.inner_ga;
      result.best_config = config;
    }
    result.log.push_back(std::move(point));
  }
  if (best_ga < 0.0) {
    throw std::runtime_error("run_sweep: every grid point diverged");
  }

  result.best = run_experiment(data, dataset_key, spec.method,
                               result.best_config, spec.seed);
  return result;
}

std::filesystem::path results_dir_from_env() {
  if (const char* dir = std::getenv("GDFC_RESULTS_DIR")) {
    return dir;
  }
  return "results";
}

bool append_result(const std::filesystem::path& dir, const ResultRow& row) {
  std::filesystem::create_directories(dir);
  const auto jsonl = dir / "runs.jsonl";
  const auto csv = dir / "results.csv";

  for (const ResultRow& existing : read_results(dir)) {
    if (row_key(existing) == row_key(row)) return false;
  }

  {
    std::ofstream out(jsonl, std::ios::app);
    out << row_to_json(row).dump() << '\n';
  }
  {
    const bool fresh = !std::filesystem::exists(csv) ||
                       std::filesystem::file_size(csv) == 0;
    std::ofstream out(csv, std::ios::app);
    if (fresh) {
      out << "dataset,method,config_hash,seed,mean_ga,mean_avg_fm,failed,"
             "wall_seconds\n";
    }
    out << row.dataset << ',' << row.method << ',' << row.config_hash << ','
        << row.seed << ',' << format_cell(row.mean_ga) << ','
        << format_cell(row.mean_avg_fm) << ',' << (row.failed ? 1 : 0) << ','
        << format_cell(row.wall_seconds) << '\n';
  }
  return true;
}

std::vector<ResultRow> read_results(const std::filesystem::path& dir) {
  std::vector<ResultRow> rows;
  std::ifstream in(dir / "runs.jsonl");
  if (!in) return rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(row_from_json(json::parse(line)));
  }
  return rows;
}

Report emit_report(const std::vector<ResultRow>& rows, bool include_cited) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");

  // Best row per (dataset, method); ties by config hash for determinism.
  std::map<std::string, std::map<std::string, const ResultRow*>> cells;
  std::set<std::string> methods_present;
  for (const ResultRow& row : rows) {
    if (row.failed) continue;
    auto& cell = cells[row.dataset][row.method];
    if (!cell || row.mean_ga > cell->mean_ga ||
        (row.mean_ga == cell->mean_ga && row.config_hash < cell->config_hash)) {
      cell = &row;
    }
    methods_present.insert(row.method);
  }

  std::vector<std::string> methods;
  for (const char* m : {"gdfc", "fnn", "knn"}) {
    if (methods_present.count(m)) methods.push_back(m);
  }
  for (const std::string& m : methods_present) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
      methods.push_back(m);
    }
  }
  std::vector<std::string> cited_methods;
  if (include_cited) {
    for (const auto& [dataset, _] : cells) {
      if (cited_table().count(dataset)) {
        cited_methods = {"NNP", "FCM"};
        break;
      }
    }
  }

  auto value_of = [&](const std::string& dataset, const std::string& method,
                      bool ga, bool& present) -> double {
    present = false;
    const auto dit = cells.find(dataset);
    if (dit != cells.end()) {
      const auto mit = dit->second.find(method);
      if (mit != dit->second.end()) {
        present = true;
        return ga ? mit->second->mean_ga : mit->second->mean_avg_fm;
      }
    }
    return 0.0;
  };
  auto cited_of = [&](const std::string& dataset, const std::string& method,
                      bool ga, bool& present) -> double {
    present = false;
    const auto dit = cited_table().find(dataset);
    if (dit != cited_table().end()) {
      const auto mit = dit->second.find(method);
      if (mit != dit->second.end()) {
        present = true;
        return ga ? mit->second.ga : mit->second.fm;
      }
    }
    return 0.0;
  };

  auto build = [&](bool ga) {
    std::vector<std::string> header{"dataset"};
    for (const auto& m : methods) header.push_back(m);
    for (const auto& m : cited_methods) header.push_back(m + "[cited]");

    std::vector<std::vector<std::string>> table;
    std::vector<double> col_sum(header.size() - 1, 0.0);
    std::vector<std::size_t> col_n(header.size() - 1, 0);
    for (const auto& [dataset, _] : cells) {
      std::vector<std::string> line{dataset};
      std::size_t col = 0;
      for (const auto& m : methods) {
        bool present;
        const double v = value_of(dataset, m, ga, present);
        line.push_back(present ? format_cell(v) : "");
        if (present) {
          col_sum[col] += v;
          ++col_n[col];
        }
        ++col;
      }
      for (const auto& m : cited_methods) {
        bool present;
        const double v = cited_of(dataset, m, ga, present);
        line.push_back(present ? format_cell(v) : "");
        if (present) {
          col_sum[col] += v;
          ++col_n[col];
        }
        ++col;
      }
      table.push_back(std::move(line));
    }
    std::vector<std::string> mean_line{"MEAN"};
    for (std::size_t c = 0; c + 1 < header.size(); ++c) {
      mean_line.push_back(
          col_n[c] ? format_cell(col_sum[c] / static_cast<double>(col_n[c]))
                   : "");
    }
    table.push_back(std::move(mean_line));
    return std::make_pair(header, table);
  };

  auto to_csv = [](const auto& header, const auto& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        out << (i ? "," : "") << line[i];
      }
      out << '\n';
    }
    return out.str();
  };
  auto to_text = [](const std::string& title, const auto& header,
                    const auto& table) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
      widths[i] = header[i].size();
    }
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        widths[i] = std::max(widths[i], line[i].size());
      }
    }
    std::ostringstream out;
    out << title << '\n';
    auto emit_line = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        out << (i ? "  " : "");
        out << line[i];
        out << std::string(widths[i] - line[i].size(), ' ');
      }
      out << '\n';
    };
    emit_line(std::vector<std::string>(header.begin(), header.end()));
    for (const auto& line : table) emit_line(line);
    return out.str();
  };

  const auto [ga_header, ga_table] = build(true);
  const auto [fm_header, fm_table] = build(false);

  Report report;
  report.ga_csv = to_csv(ga_header, ga_table);
  report.fm_csv = to_csv(fm_header, fm_table);
  report.text = to_text("Generalization accuracy (%)", ga_header, ga_table) +
                "\n" + to_text("Average F-measure (%)", fm_header, fm_table);
  return report;
}

void write_report(const std::filesystem::path& dir, const Report& report) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report_ga.csv") << report.ga_csv;
  std::ofstream(dir / "report_fm.csv") << report.fm_csv;
  std::ofstream(dir / "report.txt") << report.text;
}

}  // namespace gdfc::bench
