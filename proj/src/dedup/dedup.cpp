#include "infospread/dedup/dedup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "infospread/common/csv.hpp"
#include "infospread/common/error.hpp"

namespace infospread::dedup {

namespace {

void check_threshold(double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw PreconditionError("dedup: threshold must lie in (0, 1], got " + std::to_string(threshold));
    }
}

// Unit rows for `ids`, in the given order.
Eigen::MatrixXd unit_rows(const topics::EmbeddingSet& embeddings, std::span<const std::string> ids) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(embeddings.dimension()));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto idx = embeddings.index_of(ids[i]);
        if (!idx) {
            throw PreconditionError("dedup: no embedding for debunk '" + ids[i] + "'");
        }
        const auto row = embeddings.matrix().row(static_cast<Eigen::Index>(*idx));
        const double norm = row.norm();
        if (!(norm > 0.0)) {
            throw NumericalError("dedup: zero-norm embedding for '" + ids[i] + "'");
        }
        out.row(static_cast<Eigen::Index>(i)) = row / norm;
    }
    return out;
}

}  // namespace

std::vector<SimilarPair> pairwise_similarity(const topics::EmbeddingSet& embeddings, std::span<const std::string> ids,
                                             double threshold) {
    check_threshold(threshold);
    std::vector<std::string> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const Eigen::MatrixXd u = unit_rows(embeddings, sorted);
    const Eigen::MatrixXd gram = u * u.transpose();
    std::vector<SimilarPair> out;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < gram.cols(); ++j) {
            if (gram(i, j) >= threshold) {
                out.push_back({sorted[static_cast<std::size_t>(i)], sorted[static_cast<std::size_t>(j)], gram(i, j)});
            }
        }
    }
    return out;
}

DedupResult find_prior_debunks(std::span<const ingest::DebunkRecord> debunks, const topics::EmbeddingSet& embeddings,
                               double threshold) {
    check_threshold(threshold);
    std::vector<const ingest::DebunkRecord*> order;
    order.reserve(debunks.size());
    for (const auto& d : debunks) {
        order.push_back(&d);
    }
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        return std::tie(a->date_published, a->id) < std::tie(b->date_published, b->id);
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (order[i]->id == order[i - 1]->id) {
            throw PreconditionError("dedup: duplicate debunk id '" + order[i]->id + "'");
        }
    }
    std::vector<std::string> ids;
    for (const auto* d : order) {
        ids.push_back(d->id);
    }
    const Eigen::MatrixXd u = unit_rows(embeddings, ids);
    const Eigen::MatrixXd gram = u * u.transpose();

    DedupResult r;
    r.threshold = threshold;
    r.debunks = order.size();
    std::vector<std::size_t> root(order.size());
    std::iota(root.begin(), root.end(), std::size_t{0});
    std::vector<std::size_t> members(order.size(), 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double s = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (s < threshold) {
                continue;
            }
            const auto& later = *order[i];
            const auto& earlier = *order[j];
            DuplicatePair p{later.id,
                            earlier.id,
                            s,
                            later.language,
                            earlier.language,
                            days_between(earlier.date_published, later.date_published),
                            !later.publisher_domain.empty() && later.publisher_domain == earlier.publisher_domain};
            r.same_publisher_pairs += p.same_publisher ? 1 : 0;
            r.pairs.push_back(std::move(p));
            root[i] = root[j];
            ++members[root[i]];
            break;
        }
    }
    r.duplicated = r.pairs.size();
    r.duplicate_rate = r.debunks == 0 ? 0.0 : static_cast<double>(r.duplicated) / static_cast<double>(r.debunks);

    for (std::size_t i = 0; i < order.size(); ++i) {
        if (members[root[i]] > 1) {
            r.timeline.push_back({order[root[i]]->id, order[i]->id, order[i]->date_published, order[i]->language});
        }
    }
    std::stable_sort(r.timeline.begin(), r.timeline.end(),
                     [](const NarrativeEntry& a, const NarrativeEntry& b) { return a.narrative_id < b.narrative_id; });
    return r;
}

std::vector<SweepRow> threshold_sweep(std::span<const ingest::DebunkRecord> debunks,
                                      const topics::EmbeddingSet& embeddings, std::span<const double> thresholds) {
    std::vector<SweepRow> rows;
    for (double t : thresholds) {
        const auto r = find_prior_debunks(debunks, embeddings, t);
        rows.push_back({t, r.duplicated, r.duplicate_rate});
    }
    return rows;
}

std::string pairs_csv(const DedupResult& result) {
    std::string out = "later_id,earlier_id,similarity,later_language,earlier_language,day_gap,same_publisher\n";
    for (const auto& p : result.pairs) {
        out += csv::join({p.later_id, p.earlier_id, csv::real(p.similarity), p.later_language, p.earlier_language,
                          std::to_string(p.day_gap), p.same_publisher ? "true" : "false"});
        out += '\n';
    }
    return out;
}

std::string timeline_csv(const DedupResult& result) {
    std::string out = "narrative_id,debunk_id,date,language\n";
    for (const auto& e : result.timeline) {
        out += csv::join({e.narrative_id, e.debunk_id, format_date(e.date), e.language});
        out += '\n';
    }
    return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "threshold,duplicated,duplicate_rate\n";
    for (const auto& r : rows) {
        out += csv::join({csv::real(r.threshold), std::to_string(r.duplicated), csv::real(r.duplicate_rate)});
        out += '\n';
    }
    return out;
}

}  // namespace infospread::dedup
