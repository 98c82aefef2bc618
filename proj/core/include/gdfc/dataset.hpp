#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdfc/types.hpp"

namespace gdfc {

struct CsvSchema {
  /// Column name (with header) or zero-based index given as a number.
  std::string label_column;
  char delimiter = ',';
  bool header = true;
  std::string missing_marker = "?";
};

struct Normalizer {
  enum class Kind { MinMax, ZScore };
  Kind kind = Kind::MinMax;
  // MinMax: a=min, b=max. ZScore: a=mean, b=stddev.
  Vec a;
  Vec b;

  bool operator==(const Normalizer& o) const = default;
};

struct Dataset {
  Matrix features;           // M x D
  std::vector<int> labels;   // dense ids in [0, num_classes)
  int num_classes = 0;
  std::vector<std::string> class_names;
  std::optional<Normalizer> normalizer;
  std::size_t dropped_rows = 0;

  std::size_t size() const { return features.rows; }
  std::size_t dim() const { return features.cols; }

  Vec row(std::size_t i) const {
    return Vec(features.data.begin() + i * features.cols,
               features.data.begin() + (i + 1) * features.cols);
  }
};

/// Parses a delimited text file into a Dataset. Numeric columns pass
/// through; categorical feature columns are one-hot encoded with
/// category order fixed by first appearance. Label values map to dense
/// ids in sorted order (numeric when every value parses, lexicographic
/// otherwise). Rows containing the missing marker are dropped and
/// counted.
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema);

/// Per-column statistics from this data only.
Normalizer fit_normalizer(const Dataset& data, Normalizer::Kind kind);

/// MinMax maps to [0,1] on the fitted range, clipping unseen values to
/// [-0.05, 1.05]; a constant column maps to 0. ZScore maps to
/// (x-mean)/std, 0 for zero-variance columns.
Dataset apply_normalizer(Dataset data, const Normalizer& stats);

/// Normalizes a single sample with fitted statistics.
Vec normalize_sample(const Vec& sample, const Normalizer& stats);

/// Row subset (for CV folds); keeps class metadata.
Dataset select_rows(const Dataset& data, const std::vector<std::size_t>& rows);

}  // namespace gdfc
