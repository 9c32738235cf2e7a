#include "infospread/ingest/url.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "infospread/common/error.hpp"
#include "infospread/common/text.hpp"

namespace infospread::ingest {

namespace {

bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) {
        return false;
    }
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
            return false;
        }
    }
    return true;
}

bool valid_host(std::string_view h) {
    if (h.empty() || h.front() == '.' || h.back() == '.' || h.find("..") != std::string_view::npos) {
        return false;
    }
    for (char c : h) {
        const auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '-' || c == '.' || c == '_' || u >= 0x80)) {
            return false;
        }
    }
    return true;
}

bool is_tracking_param(std::string_view key) {
    return text::starts_with_ci(key, "utm_") || text::ascii_lower(key) == "fbclid";
}

}  // namespace

Url parse_url(std::string_view text) {
    const std::string trimmed = text::trim(text);
    std::string_view s = trimmed;
    const auto scheme_end = s.find("://");
    if (scheme_end == std::string_view::npos || !valid_scheme(s.substr(0, scheme_end))) {
        throw FormatError("not an absolute URL: '" + trimmed + "'");
    }
    Url url;
    url.scheme = text::ascii_lower(s.substr(0, scheme_end));
    s.remove_prefix(scheme_end + 3);

    const auto hash = s.find('#');
    if (hash != std::string_view::npos) {
        url.fragment = std::string(s.substr(hash + 1));
        s = s.substr(0, hash);
    }
    const auto qmark = s.find('?');
    if (qmark != std::string_view::npos) {
        url.query = std::string(s.substr(qmark + 1));
        s = s.substr(0, qmark);
    }
    const auto slash = s.find('/');
    std::string_view authority = s.substr(0, slash);
    url.path = slash == std::string_view::npos ? "/" : std::string(s.substr(slash));

    const auto at = authority.rfind('@');
    if (at != std::string_view::npos) {
        authority.remove_prefix(at + 1);
    }
    const auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        url.port = std::string(authority.substr(colon + 1));
        authority = authority.substr(0, colon);
        for (char c : url.port) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw FormatError("bad port in URL: '" + trimmed + "'");
            }
        }
    }
    url.host = text::ascii_lower(authority);
    if (!valid_host(url.host)) {
        throw FormatError("bad host in URL: '" + trimmed + "'");
    }
    return url;
}

std::string extract_domain(std::string_view url) {
    std::string host = parse_url(url).host;
    if (host.starts_with("www.") && host.size() > 4) {
        host.erase(0, 4);
    } else if (host.starts_with("m.") && host.size() > 2) {
        host.erase(0, 2);
    }
    return host;
}

std::string normalize_url(std::string_view text) {
    const Url url = parse_url(text);
    std::string out = url.scheme + "://" + url.host;
    const bool default_port = url.port.empty() || (url.scheme == "http" && url.port == "80") ||
                              (url.scheme == "https" && url.port == "443");
    if (!default_port) {
        out += ":" + url.port;
    }
    std::string path = url.path;
    while (path.size() > 1 && path.back() == '/') {
        path.pop_back();
    }
    out += path;

    std::string query;
    if (!url.query.empty()) {
        for (const auto& param : text::split(url.query, '&')) {
            if (param.empty()) {
                continue;
            }
            const std::string key = param.substr(0, param.find('='));
            if (is_tracking_param(key)) {
                continue;
            }
            if (!query.empty()) {
                query.push_back('&');
            }
            query += param;
        }
    }
    if (!query.empty()) {
        out += "?" + query;
    }
    return out;
}

std::vector<DomainShare> top_domains(std::span<const std::string> urls, std::size_t n) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& u : urls) {
        try {
            ++counts[extract_domain(u)];
            ++total;
        } catch (const FormatError&) {
        }
    }
    std::vector<DomainShare> ranked;
    for (const auto& [domain, count] : counts) {
        ranked.push_back({domain, count, 0.0});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const DomainShare& a, const DomainShare& b) { return a.count > b.count; });
    std::size_t rest = 0;
    if (ranked.size() > n) {
        for (std::size_t i = n; i < ranked.size(); ++i) {
            rest += ranked[i].count;
        }
        ranked.resize(n);
    }
    if (rest > 0) {
        ranked.push_back({"Other", rest, 0.0});
    }
    for (auto& r : ranked) {
        r.percent = total == 0 ? 0.0 : 100.0 * static_cast<double>(r.count) / static_cast<double>(total);
    }
    return ranked;
}

}  // namespace infospread::ingest
