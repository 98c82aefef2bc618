#include "gdfc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gdfc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open " + path.string());
  }

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  std::size_t dropped = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto cells = split(line, schema.delimiter);
    if (first && schema.header) {
      header = cells;
      width = cells.size();
      first = false;
      continue;
    }
    first = false;
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw std::runtime_error("load_csv: ragged row in " + path.string());
    }
    bool missing = false;
    for (const auto& c : cells) {
      if (c == schema.missing_marker || c.empty()) {
        missing = true;
        break;
      }
    }
    if (missing) {
      ++dropped;
      continue;
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) {
    throw std::runtime_error("load_csv: no usable rows in " + path.string());
  }

  // Resolve the label column: header name first, then numeric index.
  std::size_t label_col = width;
  if (schema.header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == schema.label_column) {
        label_col = i;
        break;
      }
    }
  }
  if (label_col == width) {
    double idx;
    if (parse_double(schema.label_column, idx) && idx >= 0 && idx < width) {
      label_col = static_cast<std::size_t>(idx);
    } else {
      throw std::runtime_error("load_csv: label column '" +
                               schema.label_column + "' not found");
    }
  }

  // Classify feature columns as numeric or categorical.
  std::vector<std::size_t> feat_cols;
  for (std::size_t c = 0; c < width; ++c) {
    if (c != label_col) feat_cols.push_back(c);
  }
  std::vector<bool> numeric(width, true);
  for (const auto& row : rows) {
    for (std::size_t c : feat_cols) {
      double v;
      if (!parse_double(row[c], v)) numeric[c] = false;
    }
  }

  // One-hot categories in order of first appearance.
  std::vector<std::vector<std::string>> categories(width);
  for (std::size_t c : feat_cols) {
    if (numeric[c]) continue;
    for (const auto& row : rows) {
      auto& cats = categories[c];
      if (std::find(cats.begin(), cats.end(), row[c]) == cats.end()) {
        cats.push_back(row[c]);
      }
    }
  }

  std::size_t dim = 0;
  for (std::size_t c : feat_cols) {
    dim += numeric[c] ? 1 : categories[c].size();
  }

  // Dense label ids in sorted order.
  std::vector<std::string> raw_labels;
  for (const auto& row : rows) raw_labels.push_back(row[label_col]);
  std::vector<std::string> names = raw_labels;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  bool labels_numeric = true;
  for (const auto& n : names) {
    double v;
    if (!parse_double(n, v)) labels_numeric = false;
  }
  if (labels_numeric) {
    std::sort(names.begin(), names.end(), [](const auto& a, const auto& b) {
      return std::stod(a) < std::stod(b);
    });
  }
  std::map<std::string, int> label_id;
  for (std::size_t i = 0; i < names.size(); ++i) {
    label_id[names[i]] = static_cast<int>(i);
  }

  Dataset data;
  data.features = Matrix(rows.size(), dim);
  data.labels.reserve(rows.size());
  data.num_classes = static_cast<int>(names.size());
  data.class_names = names;
  data.dropped_rows = dropped;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t j = 0;
    for (std::size_t c : feat_cols) {
      if (numeric[c]) {
        double v;
        parse_double(rows[r][c], v);
        data.features(r, j++) = v;
      } else {
        const auto& cats = categories[c];
        const auto it = std::find(cats.begin(), cats.end(), rows[r][c]);
        for (std::size_t k = 0; k < cats.size(); ++k) {
          data.features(r, j++) =
              (k == static_cast<std::size_t>(it - cats.begin())) ? 1.0 : 0.0;
        }
      }
    }
    data.labels.push_back(label_id.at(rows[r][label_col]));
  }
  return data;
}

Normalizer fit_normalizer(const Dataset& data, Normalizer::Kind kind) {
  if (data.size() == 0) throw std::invalid_argument("fit_normalizer: empty data");
  const std::size_t d = data.dim();
  Normalizer stats;
  stats.kind = kind;
  stats.a.assign(d, 0.0);
  stats.b.assign(d, 0.0);
  const double m = static_cast<double>(data.size());
  for (std::size_t c = 0; c < d; ++c) {
    if (kind == Normalizer::Kind::MinMax) {
      double lo = data.features(0, c), hi = data.features(0, c);
      for (std::size_t r = 1; r < data.size(); ++r) {
        lo = std::min(lo, data.features(r, c));
        hi = std::max(hi, data.features(r, c));
      }
      stats.a[c] = lo;
      stats.b[c] = hi;
    } else {
      double sum = 0.0;
      for (std::size_t r = 0; r < data.size(); ++r) sum += data.features(r, c);
      const double mean = sum / m;
      double var = 0.0;
      for (std::size_t r = 0; r < data.size(); ++r) {
        const double dev = data.features(r, c) - mean;
        var += dev * dev;
      }
      stats.a[c] = mean;
      stats.b[c] = std::sqrt(var / m);
    }
  }
  return stats;
}

Vec normalize_sample(const Vec& sample, const Normalizer& stats) {
  if (sample.size() != stats.a.size()) {
    throw std::invalid_argument("normalize_sample: dimension mismatch");
  }
  Vec out(sample.size());
  for (std::size_t c = 0; c < sample.size(); ++c) {
    if (stats.kind == Normalizer::Kind::MinMax) {
      const double range = stats.b[c] - stats.a[c];
      if (range == 0.0) {
        out[c] = 0.0;
      } else {
        out[c] = std::clamp((sample[c] - stats.a[c]) / range, -0.05, 1.05);
      }
    } else {
      out[c] = stats.b[c] == 0.0 ? 0.0 : (sample[c] - stats.a[c]) / stats.b[c];
    }
  }
  return out;
}

Dataset apply_normalizer(Dataset data, const Normalizer& stats) {
  if (data.dim() != stats.a.size()) {
    throw std::invalid_argument("apply_normalizer: dimension mismatch");
  }
  for (std::size_t r = 0; r < data.size(); ++r) {
    const Vec t = normalize_sample(data.row(r), stats);
    for (std::size_t c = 0; c < data.dim(); ++c) data.features(r, c) = t[c];
  }
  data.normalizer = stats;
  return data;
}

Dataset select_rows(const Dataset& data, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.features = Matrix(rows.size(), data.dim());
  out.labels.reserve(rows.size());
  out.num_classes = data.num_classes;
  out.class_names = data.class_names;
  out.normalizer = data.normalizer;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < data.dim(); ++c) {
      out.features(i, c) = data.features(rows[i], c);
    }
    out.labels.push_back(data.labels[rows[i]]);
  }
  return out;
}

}  // namespace gdfc
