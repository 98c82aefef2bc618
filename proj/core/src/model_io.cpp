#include "gdfc/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gdfc {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  m.data = j.at("data").get<std::vector<double>>();
  if (m.data.size() != m.rows * m.cols) {
    throw std::runtime_error("model_io: matrix size mismatch");
  }
  return m;
}

json envelope(const char* method, json model) {
  return json{{"schema", kModelSchema},
              {"method", method},
              {"model", std::move(model)}};
}

json open_envelope(const json& j, const char* method) {
  if (j.at("schema").get<std::string>() != kModelSchema) {
    throw std::runtime_error("model_io: unsupported schema " +
                             j.at("schema").get<std::string>());
  }
  if (j.at("method").get<std::string>() != method) {
    throw std::runtime_error("model_io: expected method " +
                             std::string(method));
  }
  return j.at("model");
}

}  // namespace

json to_json(const Network& net) {
  json weights = json::array();
  for (const Matrix& w : net.weights) weights.push_back(matrix_to_json(w));
  return json{{"layer_sizes", net.layer_sizes},
              {"activation", activation_name(net.activation)},
              {"weights", std::move(weights)},
              {"biases", net.biases}};
}

Network network_from_json(const json& j) {
  Network net;
  net.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
  net.activation = activation_from_name(j.at("activation").get<std::string>());
  for (const json& w : j.at("weights")) {
    net.weights.push_back(matrix_from_json(w));
  }
  net.biases = j.at("biases").get<std::vector<Vec>>();
  return net;
}

json to_json(const CentroidSet& set) {
  json items = json::array();
  for (const Centroid& c : set.centroids) {
    items.push_back(json{{"position", c.position},
                         {"color", c.color},
                         {"member_count", c.member_count}});
  }
  return json{{"dimension", set.dimension},
              {"num_classes", set.num_classes},
              {"centroids", std::move(items)}};
}

CentroidSet centroid_set_from_json(const json& j) {
  CentroidSet set;
  set.dimension = j.at("dimension").get<std::size_t>();
  set.num_classes = j.at("num_classes").get<int>();
  for (const json& it : j.at("centroids")) {
    Centroid c;
    c.position = it.at("position").get<Vec>();
    c.color = it.at("color").get<int>();
    c.member_count = it.at("member_count").get<std::size_t>();
    set.centroids.push_back(std::move(c));
  }
  return set;
}

json to_json(const Normalizer& stats) {
  return json{
      {"kind", stats.kind == Normalizer::Kind::MinMax ? "minmax" : "zscore"},
      {"a", stats.a},
      {"b", stats.b}};
}

Normalizer normalizer_from_json(const json& j) {
  Normalizer stats;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "minmax") {
    stats.kind = Normalizer::Kind::MinMax;
  } else if (kind == "zscore") {
    stats.kind = Normalizer::Kind::ZScore;
  } else {
    throw std::runtime_error("model_io: unknown normalizer kind " + kind);
  }
  stats.a = j.at("a").get<Vec>();
  stats.b = j.at("b").get<Vec>();
  return stats;
}

json to_json(const TrainConfig& cfg) {
  return json{{"hidden_sizes", cfg.hidden_sizes},
              {"partition_dim", cfg.partition_dim},
              {"num_centroids", cfg.num_centroids},
              {"xi", cfg.xi},
              {"lambda", cfg.lambda},
              {"eta", cfg.eta},
              {"eta_decay", cfg.eta_decay},
              {"epochs", cfg.epochs},
              {"recluster_every", cfg.recluster_every},
              {"seed", cfg.seed},
              {"kmeans_max_iters", cfg.kmeans_max_iters},
              {"kmeans_tol", cfg.kmeans_tol},
              {"divergence_abort", cfg.divergence_abort},
              {"keep_best_by_loss", cfg.keep_best_by_loss}};
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig cfg;
  cfg.hidden_sizes = j.value("hidden_sizes", cfg.hidden_sizes);
  cfg.partition_dim = j.value("partition_dim", cfg.partition_dim);
  cfg.num_centroids = j.value("num_centroids", cfg.num_centroids);
  cfg.xi = j.value("xi", cfg.xi);
  cfg.lambda = j.value("lambda", cfg.lambda);
  cfg.eta = j.value("eta", cfg.eta);
  cfg.eta_decay = j.value("eta_decay", cfg.eta_decay);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.recluster_every = j.value("recluster_every", cfg.recluster_every);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.kmeans_max_iters = j.value("kmeans_max_iters", cfg.kmeans_max_iters);
  cfg.kmeans_tol = j.value("kmeans_tol", cfg.kmeans_tol);
  cfg.divergence_abort = j.value("divergence_abort", cfg.divergence_abort);
  cfg.keep_best_by_loss = j.value("keep_best_by_loss", cfg.keep_best_by_loss);
  return cfg;
}

json to_json(const GdfcModel& model) {
  json m{{"network", to_json(model.network)},
         {"centroids", to_json(model.centroids)},
         {"config", to_json(model.config)},
         {"training_loss_curve", model.training_loss_curve}};
  if (model.normalizer) m["normalizer"] = to_json(*model.normalizer);
  return envelope("gdfc", std::move(m));
}

GdfcModel gdfc_model_from_json(const json& j) {
  const json m = open_envelope(j, "gdfc");
  GdfcModel model;
  model.network = network_from_json(m.at("network"));
  model.centroids = centroid_set_from_json(m.at("centroids"));
  model.config = train_config_from_json(m.at("config"));
  model.training_loss_curve =
      m.at("training_loss_curve").get<std::vector<double>>();
  if (m.contains("normalizer")) {
    model.normalizer = normalizer_from_json(m.at("normalizer"));
  }
  return model;
}

void save_model(const GdfcModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_model: cannot write " + path.string());
  }
  out << to_json(model).dump(2) << '\n';
}

GdfcModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_model: cannot read " + path.string());
  }
  return gdfc_model_from_json(json::parse(in));
}

json to_json(const FnnModel& model) {
  json m{{"network", to_json(model.network)}};
  if (model.normalizer) m["normalizer"] = to_json(*model.normalizer);
  return envelope("fnn", std::move(m));
}

FnnModel fnn_model_from_json(const json& j) {
  const json m = open_envelope(j, "fnn");
  FnnModel model;
  model.network = network_from_json(m.at("network"));
  if (m.contains("normalizer")) {
    model.normalizer = normalizer_from_json(m.at("normalizer"));
  }
  return model;
}

json to_json(const KnnModel& model) {
  json m{{"features", matrix_to_json(model.train_features)},
         {"labels", model.train_labels},
         {"num_classes", model.num_classes},
         {"k", model.k}};
  if (model.normalizer) m["normalizer"] = to_json(*model.normalizer);
  return envelope("knn", std::move(m));
}

KnnModel knn_model_from_json(const json& j) {
  const json m = open_envelope(j, "knn");
  KnnModel model;
  model.train_features = matrix_from_json(m.at("features"));
  model.train_labels = m.at("labels").get<std::vector<int>>();
  model.num_classes = m.at("num_classes").get<int>();
  model.k = m.at("k").get<std::size_t>();
  if (m.contains("normalizer")) {
    model.normalizer = normalizer_from_json(m.at("normalizer"));
  }
  return model;
}

}  // namespace gdfc
