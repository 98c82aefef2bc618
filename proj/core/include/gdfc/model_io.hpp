#pragma once

#include <filesystem>

#include "json.hpp"

#include "gdfc/baselines.hpp"
#include "gdfc/trainer.hpp"

namespace gdfc {

inline constexpr const char* kModelSchema = "gdfc.model/1";

// Versioned JSON envelope: {"schema": "gdfc.model/1", "method": ...,
// "model": {...}}. Weight matrices serialize row-major; doubles round-trip
// loss-free (shortest-representation encoding).

nlohmann::json to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CentroidSet& set);
CentroidSet centroid_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Normalizer& stats);
Normalizer normalizer_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GdfcModel& model);
GdfcModel gdfc_model_from_json(const nlohmann::json& j);

void save_model(const GdfcModel& model, const std::filesystem::path& path);
GdfcModel load_model(const std::filesystem::path& path);

nlohmann::json to_json(const FnnModel& model);
FnnModel fnn_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const KnnModel& model);
KnnModel knn_model_from_json(const nlohmann::json& j);

}  // namespace gdfc
