#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace infospread::topics {

/// Claim embeddings keyed by id. Rows are kept sorted by id so every
/// consumer sees the same point order regardless of input order.
class EmbeddingSet {
public:
    EmbeddingSet() = default;

    /// Validates a common dimension and finite entries (PreconditionError otherwise).
    [[nodiscard]] static EmbeddingSet from_map(const std::map<std::string, std::vector<double>>& vectors);

    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
    [[nodiscard]] const std::vector<std::string>& ids() const noexcept { return ids_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return vectors_; }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view id) const;
    [[nodiscard]] bool contains(std::string_view id) const { return index_of(id).has_value(); }

    /// Restriction to the given ids; throws PreconditionError for unknown ids.
    [[nodiscard]] EmbeddingSet subset(std::span<const std::string> ids) const;

    /// Rows scaled to unit length; throws NumericalError naming a zero-norm id.
    [[nodiscard]] EmbeddingSet normalized() const;

private:
    std::vector<std::string> ids_;
    Eigen::MatrixXd vectors_;
};

/// JSON Lines: one `{"id": ..., "vector": [...]}` per line.
[[nodiscard]] EmbeddingSet parse_embeddings_jsonl(std::string_view content);
[[nodiscard]] EmbeddingSet load_embeddings(const std::filesystem::path& path);
[[nodiscard]] std::string to_jsonl(const EmbeddingSet& set);

/// Offline stand-in for a sentence encoder: hashed character 3-5-gram TF-IDF
/// (smooth idf, L2-normalized rows) over normalized text padded with spaces.
/// Monolingual only; cross-language duplicates will not be found with it.
class LexicalEmbedder {
public:
    explicit LexicalEmbedder(std::size_t dimension = 1024) : dimension_(dimension) {}

    [[nodiscard]] EmbeddingSet embed(const std::map<std::string, std::string>& texts) const;

private:
    std::size_t dimension_;
};

}  // namespace infospread::topics
