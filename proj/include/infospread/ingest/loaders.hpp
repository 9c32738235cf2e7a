#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infospread/ingest/records.hpp"

namespace infospread::ingest {

enum class DebunkFormat { claimreview_json, euvsdisinfo_table };

[[nodiscard]] DebunkFormat parse_debunk_format(std::string_view text);

struct DebunkLoad {
    std::vector<DebunkRecord> records;
    /// Records that failed validation (missing mandatory field, duplicate id, bad URL).
    std::vector<Reject> rejects;
    /// Ids of retained records that carry no disinformation links.
    std::vector<std::string> link_less;
    /// Non-fatal problems, e.g. unparseable disinformation links that were skipped.
    std::vector<std::string> warnings;
};

struct PostLoad {
    std::vector<PostRecord> records;
    std::vector<Reject> rejects;
};

/// ClaimReview feeds accept three shapes: a DataFeed object with
/// dataFeedElement[].item[], a bare array of ClaimReview objects, or a single
/// ClaimReview object. Disinformation links come from itemReviewed.appearance,
/// itemReviewed.firstAppearance and itemReviewed.url. An optional
/// "claimReviewedEn" field carries a pre-translated claim.
///
/// EUvsDisinfo tables are CSV with header
/// id,url,date_published,claim_text,claim_text_en,language,disinfo_links,affected_countries
/// where list columns are '|'-separated.
///
/// Throws FormatError when the file does not parse at all.
[[nodiscard]] DebunkLoad load_debunks(const std::filesystem::path& path, DebunkFormat format);
[[nodiscard]] DebunkLoad parse_claimreview(std::string_view content);
[[nodiscard]] DebunkLoad parse_euvsdisinfo(std::string_view content);

/// Posts are JSON Lines, one object per post:
/// {"id", "created_at" (ISO-8601), "text", "author_followers", "author_tweet_count",
///  "retweet_count", "reply_count", "like_count", "quote_count",
///  "author_location" (optional), "urls" [..], "hashtags" [..], "is_retweet"}.
[[nodiscard]] PostLoad load_posts(const std::filesystem::path& path);
[[nodiscard]] PostLoad parse_posts(std::string_view content);

/// Reads "one keyword per line" files; blank lines and '#' comments ignored.
[[nodiscard]] std::vector<std::string> load_keywords(const std::filesystem::path& path);

// Normalized interchange used between pipeline stages.
[[nodiscard]] nlohmann::json to_json(const DebunkRecord& d);
[[nodiscard]] DebunkRecord debunk_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const MatchedPost& p);
[[nodiscard]] MatchedPost matched_post_from_json(const nlohmann::json& j);

[[nodiscard]] std::string rejects_csv(const std::vector<Reject>& rejects);

}  // namespace infospread::ingest
