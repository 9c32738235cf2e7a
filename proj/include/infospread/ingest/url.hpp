#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infospread::ingest {

/// Components of an absolute http(s)-style URL.
struct Url {
    std::string scheme;
    std::string host;  // lowercase
    std::string port;  // empty when absent
    std::string path;  // "/" when absent
    std::string query;  // without '?'
    std::string fragment;  // without '#'
};

/// Parses an absolute URL ("scheme://host[:port][/path][?query][#fragment]").
/// Throws FormatError for relative or malformed input.
[[nodiscard]] Url parse_url(std::string_view text);

/// Lowercase host with a leading "www." or "m." removed. Deeper subdomains
/// ("arabic.rt.com", "de.news-front.info") are kept.
[[nodiscard]] std::string extract_domain(std::string_view url);

/// Canonical form used for link matching: lowercase scheme and host, default
/// port dropped, fragment removed, utm_* and fbclid query parameters removed,
/// trailing slash on non-root paths removed.
[[nodiscard]] std::string normalize_url(std::string_view url);

struct DomainShare {
    std::string domain;  // "Other" for the remainder row
    std::size_t count = 0;
    double percent = 0.0;
};

/// Top-n domains by link count (ties lexicographic) plus an "Other" row when
/// anything remains. Unparseable URLs are skipped.
[[nodiscard]] std::vector<DomainShare> top_domains(std::span<const std::string> urls, std::size_t n);

}  // namespace infospread::ingest
