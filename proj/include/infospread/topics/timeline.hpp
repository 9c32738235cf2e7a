#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "infospread/common/date.hpp"
#include "infospread/ingest/records.hpp"
#include "infospread/timeseries/series.hpp"

namespace infospread::topics {

struct ClusterTimeline {
    /// One series per cluster 0..k-1, labelled "cluster_<i>".
    std::vector<timeseries::DailySeries> series;
    /// Matched posts per cluster over the window.
    std::vector<std::size_t> totals;
    /// Posts counted in more than one cluster.
    std::size_t multi_cluster_posts = 0;
    /// Posts whose debunks carry no cluster assignment.
    std::size_t unassigned_posts = 0;
};

/// Daily counts of disinformation posts per cluster. A post counts once for
/// every distinct cluster among the debunks it matched.
[[nodiscard]] ClusterTimeline cluster_timeline(const std::map<std::string, int>& assignments, std::size_t k,
                                               std::span<const ingest::MatchedPost> posts, DateRange window);

}  // namespace infospread::topics
