#pragma once

#include <cstdint>
#include <vector>

#include "gdfc/types.hpp"

namespace gdfc {

inline constexpr int kUncolored = -1;

struct Centroid {
  Vec position;
  int color = kUncolored;
  std::size_t member_count = 0;

  bool operator==(const Centroid& o) const = default;
};

struct CentroidSet {
  std::vector<Centroid> centroids;
  std::size_t dimension = 0;
  int num_classes = 0;

  std::size_t size() const { return centroids.size(); }
  bool operator==(const CentroidSet& o) const = default;
};

struct KmeansResult {
  CentroidSet set;  // uncolored
  std::vector<std::size_t> assignment;
};

/// Lloyd's algorithm with k-means++ seeding. Stops when no centroid
/// coordinate moves more than tol, or after max_iters passes. An empty
/// cluster is re-seeded at the point farthest from its previous center.
/// `warm_start` (k positions) replaces the k-means++ initialization so a
/// caller can track slowly moving data between refreshes.
KmeansResult kmeans(const std::vector<Vec>& points, std::size_t k,
                    std::uint64_t seed, std::size_t max_iters = 300,
                    double tol = 1e-6,
                    const std::vector<Vec>* warm_start = nullptr);

/// Within-cluster sum of squares for a given assignment.
double wcss(const std::vector<Vec>& points, const CentroidSet& set,
            const std::vector<std::size_t>& assignment);

/// Majority-vote coloration. Ties go to the smaller class index; a
/// centroid with no members stays uncolored. Afterwards every class
/// present in `labels` owns at least one centroid: orphan classes are
/// repaired by recoloring the centroid nearest to the class's estimated
/// mean, preferring uncolored centroids and never taking a class's last
/// one.
CentroidSet color_centroids(CentroidSet set,
                            const std::vector<std::size_t>& assignment,
                            const std::vector<int>& labels, int num_classes);

/// Nearest centroid sharing the sample's class (Euclidean, ties to the
/// lowest index). Throws if the class owns no centroid.
const Centroid& nearest_self(const Vec& point, const CentroidSet& set,
                             int label);

/// Nearest centroid of any other class. Throws if every colored centroid
/// shares the sample's class.
const Centroid& nearest_noself(const Vec& point, const CentroidSet& set,
                               int label);

/// Nearest colored centroid overall; the inference rule.
const Centroid& nearest_any(const Vec& point, const CentroidSet& set);

}  // namespace gdfc
