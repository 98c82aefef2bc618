#include "gdfc/centroids.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace gdfc {

namespace {

std::size_t count_distinct(const std::vector<Vec>& points) {
  std::vector<const Vec*> ptrs;
  ptrs.reserve(points.size());
  for (const Vec& p : points) ptrs.push_back(&p);
  std::sort(ptrs.begin(), ptrs.end(),
            [](const Vec* a, const Vec* b) { return *a < *b; });
  std::size_t n = points.empty() ? 0 : 1;
  for (std::size_t i = 1; i < ptrs.size(); ++i) {
    if (*ptrs[i] != *ptrs[i - 1]) ++n;
  }
  return n;
}

std::vector<Vec> kmeanspp_init(const std::vector<Vec>& points, std::size_t k,
                               Rng& rng) {
  std::vector<Vec> centers;
  centers.push_back(points[rng.index(points.size())]);
  Vec d2(points.size());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& c : centers) {
        best = std::min(best, squared_distance(points[i], c));
      }
      d2[i] = best;
      total += best;
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double r = rng.uniform() * total;
      for (std::size_t i = 0; i < points.size(); ++i) {
        r -= d2[i];
        if (r <= 0.0) {
          pick = i;
          break;
        }
        pick = i;
      }
    } else {
      pick = rng.index(points.size());
    }
    centers.push_back(points[pick]);
  }
  return centers;
}

std::size_t nearest_center(const Vec& p, const std::vector<Vec>& centers) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = squared_distance(p, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

KmeansResult kmeans(const std::vector<Vec>& points, std::size_t k,
                    std::uint64_t seed, std::size_t max_iters, double tol,
                    const std::vector<Vec>* warm_start) {
  if (points.empty()) throw std::invalid_argument("kmeans: empty input");
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  const std::size_t dim = points.front().size();
  for (const Vec& p : points) {
    if (p.size() != dim) throw std::invalid_argument("kmeans: ragged points");
    if (!all_finite(p)) throw std::invalid_argument("kmeans: non-finite point");
  }
  if (k > count_distinct(points)) {
    throw std::invalid_argument("kmeans: k exceeds number of distinct points");
  }

  if (warm_start && warm_start->size() != k) {
    throw std::invalid_argument("kmeans: warm start size != k");
  }

  Rng rng(seed);
  std::vector<Vec> pos = warm_start ? *warm_start : kmeanspp_init(points, k, rng);
  std::vector<std::size_t> assignment(points.size());
  std::vector<std::size_t> counts(k);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      assignment[i] = nearest_center(points[i], pos);
    }

    std::vector<Vec> sums(k, Vec(dim, 0.0));
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::size_t c = assignment[i];
      ++counts[c];
      for (std::size_t q = 0; q < dim; ++q) sums[c][q] += points[i][q];
    }

    double movement = 0.0;
    bool reseeded = false;
    std::vector<bool> taken(points.size(), false);
    for (std::size_t c = 0; c < k; ++c) {
      Vec next;
      if (counts[c] > 0) {
        next = sums[c];
        for (double& x : next) x /= static_cast<double>(counts[c]);
      } else {
        // Re-seed an empty cluster at the point farthest from its
        // previous center.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (taken[i]) continue;
          const double d = squared_distance(points[i], pos[c]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        taken[far] = true;
        next = points[far];
        reseeded = true;
      }
      for (std::size_t q = 0; q < dim; ++q) {
        movement = std::max(movement, std::abs(next[q] - pos[c][q]));
      }
      pos[c] = std::move(next);
    }

    if (movement < tol && !reseeded) break;
  }

  KmeansResult result;
  result.set.dimension = dim;
  result.set.centroids.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    result.set.centroids[c].position = pos[c];
    result.set.centroids[c].member_count = counts[c];
  }
  result.assignment = std::move(assignment);
  return result;
}

double wcss(const std::vector<Vec>& points, const CentroidSet& set,
            const std::vector<std::size_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += squared_distance(points[i], set.centroids[assignment[i]].position);
  }
  return total;
}

CentroidSet color_centroids(CentroidSet set,
                            const std::vector<std::size_t>& assignment,
                            const std::vector<int>& labels, int num_classes) {
  if (assignment.size() != labels.size()) {
    throw std::invalid_argument("color_centroids: assignment/labels mismatch");
  }
  if (num_classes < 1) {
    throw std::invalid_argument("color_centroids: num_classes must be >= 1");
  }
  if (static_cast<int>(set.size()) < num_classes) {
    throw std::invalid_argument(
        "color_centroids: need at least one centroid per class");
  }

  const std::size_t k = set.size();
  std::vector<std::vector<std::size_t>> votes(
      k, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= k) {
      throw std::invalid_argument("color_centroids: assignment out of range");
    }
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw std::invalid_argument("color_centroids: label out of range");
    }
    ++votes[assignment[i]][labels[i]];
  }

  set.num_classes = num_classes;
  for (std::size_t c = 0; c < k; ++c) {
    set.centroids[c].member_count = 0;
    for (std::size_t n = 0; n < static_cast<std::size_t>(num_classes); ++n) {
      set.centroids[c].member_count += votes[c][n];
    }
    set.centroids[c].color = kUncolored;
    std::size_t best = 0;
    for (int n = 0; n < num_classes; ++n) {
      if (votes[c][n] > best) {  // strict: ties keep the smaller index
        best = votes[c][n];
        set.centroids[c].color = n;
      }
    }
  }

  // Orphan repair. A class with samples but no centroid takes the
  // centroid nearest to the class's estimated mean, preferring uncolored
  // centroids and never a class's last one. The class mean is estimated
  // from cluster centers weighted by that class's membership.
  std::vector<std::size_t> class_total(num_classes, 0);
  for (int l : labels) ++class_total[l];

  for (int cls = 0; cls < num_classes; ++cls) {
    if (class_total[cls] == 0) continue;
    bool owned = false;
    for (const Centroid& c : set.centroids) {
      if (c.color == cls) {
        owned = true;
        break;
      }
    }
    if (owned) continue;

    Vec mean(set.dimension, 0.0);
    double weight = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double w = static_cast<double>(votes[c][cls]);
      if (w == 0.0) continue;
      for (std::size_t q = 0; q < set.dimension; ++q) {
        mean[q] += w * set.centroids[c].position[q];
      }
      weight += w;
    }
    if (weight > 0.0) {
      for (double& x : mean) x /= weight;
    }

    std::vector<std::size_t> color_count(num_classes, 0);
    for (const Centroid& c : set.centroids) {
      if (c.color != kUncolored) ++color_count[c.color];
    }

    long best_idx = -1;
    double best_d = std::numeric_limits<double>::infinity();
    bool best_uncolored = false;
    for (std::size_t c = 0; c < k; ++c) {
      const int col = set.centroids[c].color;
      const bool uncolored = col == kUncolored;
      if (!uncolored && color_count[col] < 2) continue;  // last of its class
      const double d = squared_distance(mean, set.centroids[c].position);
      // Uncolored candidates beat colored ones outright.
      if (uncolored != best_uncolored ? uncolored : d < best_d) {
        best_idx = static_cast<long>(c);
        best_d = d;
        best_uncolored = uncolored;
      }
    }
    if (best_idx < 0) {
      throw std::runtime_error(
          "color_centroids: cannot repair orphan class " + std::to_string(cls));
    }
    set.centroids[static_cast<std::size_t>(best_idx)].color = cls;
  }
  return set;
}

namespace {

const Centroid& nearest_matching(const Vec& point, const CentroidSet& set,
                                 bool (*match)(int color, int label), int label,
                                 const char* what) {
  if (point.size() != set.dimension) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
  long best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < set.size(); ++c) {
    const Centroid& cen = set.centroids[c];
    if (cen.color == kUncolored || !match(cen.color, label)) continue;
    const double d = squared_distance(point, cen.position);
    if (d < best_d) {
      best_d = d;
      best = static_cast<long>(c);
    }
  }
  if (best < 0) {
    throw std::runtime_error(std::string(what) + ": no eligible centroid");
  }
  return set.centroids[static_cast<std::size_t>(best)];
}

}  // namespace

const Centroid& nearest_self(const Vec& point, const CentroidSet& set,
                             int label) {
  return nearest_matching(
      point, set, [](int c, int l) { return c == l; }, label, "nearest_self");
}

const Centroid& nearest_noself(const Vec& point, const CentroidSet& set,
                               int label) {
  return nearest_matching(
      point, set, [](int c, int l) { return c != l; }, label, "nearest_noself");
}

const Centroid& nearest_any(const Vec& point, const CentroidSet& set) {
  return nearest_matching(
      point, set, [](int, int) { return true; }, 0, "nearest_any");
}

}  // namespace gdfc
