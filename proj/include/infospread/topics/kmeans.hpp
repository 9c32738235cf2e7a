#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "infospread/topics/embeddings.hpp"

namespace infospread::topics {

struct KMeansOptions {
    std::size_t max_iter = 300;
    std::uint64_t seed = 0;
    /// Cluster unit-length rows, so Euclidean distance is monotone in cosine distance.
    bool normalize = true;
};

struct KMeansResult {
    std::size_t k = 0;
    /// Cluster of each point, aligned with EmbeddingSet::ids().
    std::vector<int> assignments;
    Eigen::MatrixXd centroids;  // k x d
    double inertia = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Inertia after every assignment step; non-increasing.
    std::vector<double> inertia_trace;
    /// Empty clusters reseeded to the farthest point.
    std::size_t reseeds = 0;
};

/// k-means++ seeding then Lloyd iterations until the assignment is a
/// fixpoint or max_iter is reached. Throws PreconditionError if k is 0 or
/// exceeds the number of points.
[[nodiscard]] KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, const KMeansOptions& options = {});
[[nodiscard]] KMeansResult kmeans(const EmbeddingSet& embeddings, std::size_t k, const KMeansOptions& options = {});

/// Mean silhouette (b - a) / max(a, b) with Euclidean distance; points in
/// singleton clusters score 0, as do points where a = b = 0. Throws
/// PreconditionError unless at least two clusters are present.
[[nodiscard]] double silhouette(const Eigen::MatrixXd& points, std::span<const int> assignments);

struct KDiagnostics {
    std::size_t k = 0;
    double inertia = 0.0;
    double silhouette = 0.0;
};

struct KSelection {
    std::size_t k = 0;
    /// Inertia (elbow) and silhouette for every k tried.
    std::vector<KDiagnostics> curve;
    /// Best silhouette fell below kLowConfidenceSilhouette.
    bool low_confidence = false;
};

inline constexpr double kLowConfidenceSilhouette = 0.2;

/// Picks the k in [k_min, k_max] with the highest mean silhouette (ties to
/// the smaller k); requires 2 <= k_min <= k_max <= n - 1.
[[nodiscard]] KSelection select_k(const EmbeddingSet& embeddings, std::size_t k_min, std::size_t k_max,
                                  const KMeansOptions& options = {});

}  // namespace infospread::topics
