#include "infospread/topics/kmeans.hpp"

#include <limits>
#include <set>
#include <string>

#include "infospread/common/error.hpp"
#include "infospread/common/rng.hpp"

namespace infospread::topics {

namespace {

Eigen::MatrixXd kmeans_plus_plus(const Eigen::MatrixXd& x, std::size_t k, Rng& rng) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), x.cols());
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);
    auto first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    centers.row(0) = x.row(first);
    chosen[static_cast<std::size_t>(first)] = true;
    Eigen::VectorXd d2 = (x.rowwise() - x.row(first)).rowwise().squaredNorm();
    for (std::size_t c = 1; c < k; ++c) {
        const double total = d2.sum();
        Eigen::Index pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2(i);
                if (acc > target && d2(i) > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) {
                // Rounding left the target past the running sum; take the last positive weight.
                for (Eigen::Index i = n - 1; i >= 0; --i) {
                    if (d2(i) > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        } else {
            // Every remaining point coincides with a center: pick an unused index.
            std::vector<Eigen::Index> unused;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!chosen[static_cast<std::size_t>(i)]) {
                    unused.push_back(i);
                }
            }
            pick = unused[rng.below(unused.size())];
        }
        chosen[static_cast<std::size_t>(pick)] = true;
        centers.row(static_cast<Eigen::Index>(c)) = x.row(pick);
        d2 = d2.cwiseMin((x.rowwise() - x.row(pick)).rowwise().squaredNorm());
    }
    return centers;
}

/// Nearest-center labels (ties to the lower index); returns the inertia.
double assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers, std::vector<int>& labels,
              Eigen::VectorXd& dist2) {
    const Eigen::Index n = x.rows();
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (Eigen::Index c = 0; c < centers.rows(); ++c) {
            const double d = (x.row(i) - centers.row(c)).squaredNorm();
            if (d < best) {
                best = d;
                best_c = static_cast<int>(c);
            }
        }
        labels[static_cast<std::size_t>(i)] = best_c;
        dist2(i) = best;
        inertia += best;
    }
    return inertia;
}

std::size_t update_centers(const Eigen::MatrixXd& x, Eigen::MatrixXd& centers, std::vector<int>& labels,
                           Eigen::VectorXd& dist2) {
    const auto k = centers.rows();
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int l : labels) {
        ++sizes[static_cast<std::size_t>(l)];
    }
    std::size_t reseeds = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
        if (sizes[static_cast<std::size_t>(c)] != 0) {
            continue;
        }
        Eigen::Index far = -1;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const auto owner = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
            if (sizes[owner] > 1 && dist2(i) > far_d) {
                far_d = dist2(i);
                far = i;
            }
        }
        if (far < 0) {
            continue;
        }
        --sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
        labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
        sizes[static_cast<std::size_t>(c)] = 1;
        dist2(far) = 0.0;
        ++reseeds;
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        sums.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
    }
    for (Eigen::Index c = 0; c < k; ++c) {
        if (sizes[static_cast<std::size_t>(c)] > 0) {
            centers.row(c) = sums.row(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
        }
    }
    return reseeds;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& x, std::size_t k, const KMeansOptions& options) {
    const auto n = static_cast<std::size_t>(x.rows());
    if (k == 0 || k > n) {
        throw PreconditionError("kmeans: k = " + std::to_string(k) + " must lie in 1.." + std::to_string(n));
    }
    if (options.max_iter == 0) {
        throw PreconditionError("kmeans: max_iter must be at least 1");
    }
    Rng rng = Rng::substream(options.seed, "kmeans++");
    KMeansResult r;
    r.k = k;
    r.centroids = kmeans_plus_plus(x, k, rng);
    r.assignments.assign(n, 0);
    Eigen::VectorXd dist2(x.rows());
    r.inertia = assign(x, r.centroids, r.assignments, dist2);
    r.inertia_trace.push_back(r.inertia);

    std::vector<int> next(n, 0);
    for (std::size_t it = 1; it <= options.max_iter; ++it) {
        r.reseeds += update_centers(x, r.centroids, r.assignments, dist2);
        const double inertia = assign(x, r.centroids, next, dist2);
        r.inertia_trace.push_back(inertia);
        r.inertia = inertia;
        r.iterations = it;
        if (next == r.assignments) {
            r.converged = true;
            break;
        }
        r.assignments = next;
    }
    return r;
}

KMeansResult kmeans(const EmbeddingSet& embeddings, std::size_t k, const KMeansOptions& options) {
    return kmeans(options.normalize ? embeddings.normalized().matrix() : embeddings.matrix(), k, options);
}

double silhouette(const Eigen::MatrixXd& x, std::span<const int> labels) {
    const auto n = static_cast<std::size_t>(x.rows());
    if (labels.size() != n) {
        throw PreconditionError("silhouette: one label per point required");
    }
    int max_label = -1;
    for (int l : labels) {
        if (l < 0) {
            throw PreconditionError("silhouette: negative cluster label");
        }
        max_label = std::max(max_label, l);
    }
    const auto k = static_cast<std::size_t>(max_label + 1);
    std::vector<std::size_t> sizes(k, 0);
    for (int l : labels) {
        ++sizes[static_cast<std::size_t>(l)];
    }
    std::size_t used = 0;
    for (std::size_t s : sizes) {
        used += s > 0 ? 1 : 0;
    }
    if (used < 2) {
        throw PreconditionError("silhouette: need at least two non-empty clusters");
    }

    double total = 0.0;
    std::vector<double> sum_to(k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (sizes[own] <= 1) {
            continue;
        }
        std::fill(sum_to.begin(), sum_to.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sum_to[static_cast<std::size_t>(labels[j])] +=
                    (x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).norm();
            }
        }
        const double a = sum_to[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c != own && sizes[c] > 0) {
                b = std::min(b, sum_to[c] / static_cast<double>(sizes[c]));
            }
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) {
            total += (b - a) / denom;
        }
    }
    return total / static_cast<double>(n);
}

KSelection select_k(const EmbeddingSet& embeddings, std::size_t k_min, std::size_t k_max,
                    const KMeansOptions& options) {
    const std::size_t n = embeddings.size();
    if (k_min < 2 || k_min > k_max || k_max + 1 > n) {
        throw PreconditionError("select_k: k range " + std::to_string(k_min) + ".." + std::to_string(k_max) +
                                " must lie within 2.." + std::to_string(n > 0 ? n - 1 : 0));
    }
    const Eigen::MatrixXd x = options.normalize ? embeddings.normalized().matrix() : embeddings.matrix();
    KSelection sel;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const KMeansResult r = kmeans(x, k, options);
        const double s = silhouette(x, r.assignments);
        sel.curve.push_back({k, r.inertia, s});
        if (s > best) {
            best = s;
            sel.k = k;
        }
    }
    sel.low_confidence = best < kLowConfidenceSilhouette;
    return sel;
}

}  // namespace infospread::topics
