#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infospread/common/date.hpp"

namespace infospread::ingest {

enum class StreamLabel { disinformation, debunk };

[[nodiscard]] std::string_view to_string(StreamLabel label) noexcept;
[[nodiscard]] StreamLabel parse_stream_label(std::string_view text);

/// One fact-check article and the disinformation links it reviews.
struct DebunkRecord {
    std::string id;
    std::string url;
    std::string publisher_domain;
    Date date_published{};
    std::string claim_text;
    std::optional<std::string> claim_text_en;
    std::string language = "und";
    std::vector<std::string> disinfo_links;
    std::optional<std::vector<std::string>> affected_countries;
    /// Which loader produced the record ("claimreview" or "euvsdisinfo").
    std::string source;

    /// Text used for keyword filtering: the English translation when supplied.
    [[nodiscard]] const std::string& filter_text() const noexcept {
        return claim_text_en ? *claim_text_en : claim_text;
    }
    [[nodiscard]] bool link_less() const noexcept { return disinfo_links.empty(); }
};

/// One social post with its engagement counters.
struct PostRecord {
    std::string id;
    Timestamp created_at{};
    std::string text;
    std::uint64_t author_followers = 0;
    std::uint64_t author_tweet_count = 0;
    std::uint64_t retweet_count = 0;
    std::uint64_t reply_count = 0;
    std::uint64_t like_count = 0;
    std::uint64_t quote_count = 0;
    std::optional<std::string> author_location_raw;
    std::vector<std::string> shared_urls;
    std::vector<std::string> hashtags;
    bool is_retweet = false;
    std::optional<StreamLabel> stream_label;
};

/// A post attached to one stream, with the debunks whose links it shares.
struct MatchedPost {
    PostRecord post;
    StreamLabel label = StreamLabel::disinformation;
    std::vector<std::string> debunk_ids;
    std::optional<std::string> author_country;
};

/// A record dropped by loading or filtering, with a machine-readable reason.
struct Reject {
    std::string id;
    std::string reason;
};

}  // namespace infospread::ingest
