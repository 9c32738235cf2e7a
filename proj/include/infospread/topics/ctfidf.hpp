#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace infospread::topics {

using Tokens = std::vector<std::string>;

/// Lowercase, split on non-letters, drop English stopwords.
[[nodiscard]] Tokens tokenize_claim(std::string_view text);
[[nodiscard]] bool is_stopword(std::string_view word);

struct ScoredWord {
    std::string word;
    double score = 0.0;
};

struct CtfidfResult {
    /// Sorted vocabulary; column order of `scores`.
    std::vector<std::string> vocabulary;
    /// k x V, score(c, t) = tf(t, c) * log(1 + A / f(t)).
    Eigen::MatrixXd scores;
    /// Per cluster, descending by score (ties lexicographic), zero scores omitted.
    std::vector<std::vector<ScoredWord>> top_words;
};

/// Class-based TF-IDF over per-cluster concatenated documents. tf(t, c) is
/// the count of t in cluster c, f(t) its count over all clusters and A the
/// mean token count per cluster. Throws PreconditionError when a cluster has
/// no documents and NumericalError when the vocabulary is empty.
[[nodiscard]] CtfidfResult ctfidf(std::span<const std::vector<Tokens>> docs_by_cluster, std::size_t top_n = 10);

/// Cosine similarity between rows, unit diagonal. Throws NumericalError for
/// a zero row.
[[nodiscard]] Eigen::MatrixXd cluster_similarity(const Eigen::MatrixXd& scores);

}  // namespace infospread::topics
