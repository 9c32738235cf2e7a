#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "infospread/ingest/records.hpp"

namespace infospread::ingest {

struct MatchDiagnostics {
    std::size_t posts_in = 0;
    std::size_t disinformation = 0;
    std::size_t debunk = 0;
    /// Posts matching links of both streams; they appear in both lists.
    std::size_t both_streams = 0;
    std::size_t unmatched = 0;
    /// Shared URLs that failed to parse and were ignored.
    std::size_t unparseable_urls = 0;
};

struct MatchResult {
    std::vector<MatchedPost> disinformation;
    std::vector<MatchedPost> debunk;
    MatchDiagnostics diagnostics;
};

/// Attaches posts to streams by normalized-URL equality (fragment and
/// tracking parameters stripped). A post sharing a debunk's own URL joins the
/// debunk stream; one sharing any of a debunk's disinformation links joins the
/// disinformation stream. debunk_ids lists every debunk matched, sorted.
/// Unmatched posts are dropped and counted.
[[nodiscard]] MatchResult match_posts_to_links(std::span<const PostRecord> posts,
                                               std::span<const DebunkRecord> debunks);

}  // namespace infospread::ingest
