#include "infospread/topics/timeline.hpp"

#include <set>

#include "infospread/common/error.hpp"

namespace infospread::topics {

ClusterTimeline cluster_timeline(const std::map<std::string, int>& assignments, std::size_t k,
                                 std::span<const ingest::MatchedPost> posts, DateRange window) {
    if (!window.valid()) {
        throw PreconditionError("cluster_timeline: window end precedes window start");
    }
    ClusterTimeline tl;
    tl.totals.assign(k, 0);
    for (std::size_t c = 0; c < k; ++c) {
        tl.series.push_back({"cluster_" + std::to_string(c), window.first, std::vector<double>(window.days(), 0.0)});
    }
    for (const auto& m : posts) {
        if (m.label != ingest::StreamLabel::disinformation) {
            continue;
        }
        const Date d = to_date(m.post.created_at);
        if (!window.contains(d)) {
            continue;
        }
        std::set<int> clusters;
        for (const auto& id : m.debunk_ids) {
            const auto it = assignments.find(id);
            if (it != assignments.end()) {
                if (it->second < 0 || static_cast<std::size_t>(it->second) >= k) {
                    throw PreconditionError("cluster_timeline: cluster index out of range for '" + id + "'");
                }
                clusters.insert(it->second);
            }
        }
        if (clusters.empty()) {
            ++tl.unassigned_posts;
            continue;
        }
        if (clusters.size() > 1) {
            ++tl.multi_cluster_posts;
        }
        const auto day = static_cast<std::size_t>(days_between(window.first, d));
        for (int c : clusters) {
            tl.series[static_cast<std::size_t>(c)].values[day] += 1.0;
            ++tl.totals[static_cast<std::size_t>(c)];
        }
    }
    return tl;
}

}  // namespace infospread::topics
