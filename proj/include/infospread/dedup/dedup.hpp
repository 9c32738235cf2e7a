#pragma once

#include <span>
#include <string>
#include <vector>

#include "infospread/common/date.hpp"
#include "infospread/ingest/records.hpp"
#include "infospread/topics/embeddings.hpp"

namespace infospread::dedup {

inline constexpr double kDefaultThreshold = 0.8;

struct SimilarPair {
    std::string id_a;  // id_a < id_b
    std::string id_b;
    double cosine = 0.0;
};

/// Exact cosine over all unordered pairs of `ids`, keeping pairs with
/// cosine >= threshold. Sorted by (id_a, id_b). Throws PreconditionError for
/// a missing id or a threshold outside (0, 1], NumericalError for a
/// zero-norm vector.
[[nodiscard]] std::vector<SimilarPair> pairwise_similarity(const topics::EmbeddingSet& embeddings,
                                                           std::span<const std::string> ids, double threshold);

struct DuplicatePair {
    std::string later_id;
    std::string earlier_id;
    double similarity = 0.0;
    std::string later_language;
    std::string earlier_language;
    std::int64_t day_gap = 0;
    bool same_publisher = false;
};

/// Member of a duplicated narrative, for the timeline.
struct NarrativeEntry {
    std::string narrative_id;  // earliest debunk of the chain
    std::string debunk_id;
    Date date{};
    std::string language;
};

struct DedupResult {
    double threshold = 0.0;
    std::vector<DuplicatePair> pairs;  // sorted by (later date, later id)
    std::size_t debunks = 0;
    std::size_t duplicated = 0;
    double duplicate_rate = 0.0;
    std::size_t same_publisher_pairs = 0;
    /// Debunks of every narrative with at least two members, by (narrative, date, id).
    std::vector<NarrativeEntry> timeline;
};

/// Debunks are ordered by (date, id), so same-day debunks pair the smaller
/// id as earlier. Each debunk pairs with its earliest predecessor whose
/// cosine reaches the threshold.
[[nodiscard]] DedupResult find_prior_debunks(std::span<const ingest::DebunkRecord> debunks,
                                             const topics::EmbeddingSet& embeddings, double threshold);

struct SweepRow {
    double threshold = 0.0;
    std::size_t duplicated = 0;
    double duplicate_rate = 0.0;
};

[[nodiscard]] std::vector<SweepRow> threshold_sweep(std::span<const ingest::DebunkRecord> debunks,
                                                    const topics::EmbeddingSet& embeddings,
                                                    std::span<const double> thresholds);

[[nodiscard]] std::string pairs_csv(const DedupResult& result);
[[nodiscard]] std::string timeline_csv(const DedupResult& result);
[[nodiscard]] std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace infospread::dedup
