#include "infospread/ingest/matching.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "infospread/common/error.hpp"
#include "infospread/ingest/url.hpp"

namespace infospread::ingest {

namespace {

using LinkIndex = std::map<std::string, std::set<std::string>>;

void index_link(LinkIndex& index, const std::string& url, const std::string& debunk_id) {
    try {
        index[normalize_url(url)].insert(debunk_id);
    } catch (const FormatError&) {
        // Loaders already validated these; anything left is ignored.
    }
}

}  // namespace

MatchResult match_posts_to_links(std::span<const PostRecord> posts, std::span<const DebunkRecord> debunks) {
    LinkIndex disinfo_index;
    LinkIndex debunk_index;
    for (const auto& d : debunks) {
        index_link(debunk_index, d.url, d.id);
        for (const auto& link : d.disinfo_links) {
            index_link(disinfo_index, link, d.id);
        }
    }

    MatchResult result;
    result.diagnostics.posts_in = posts.size();
    for (const auto& post : posts) {
        std::set<std::string> disinfo_ids;
        std::set<std::string> debunk_ids;
        for (const auto& url : post.shared_urls) {
            std::string key;
            try {
                key = normalize_url(url);
            } catch (const FormatError&) {
                ++result.diagnostics.unparseable_urls;
                continue;
            }
            if (const auto it = disinfo_index.find(key); it != disinfo_index.end()) {
                disinfo_ids.insert(it->second.begin(), it->second.end());
            }
            if (const auto it = debunk_index.find(key); it != debunk_index.end()) {
                debunk_ids.insert(it->second.begin(), it->second.end());
            }
        }
        if (disinfo_ids.empty() && debunk_ids.empty()) {
            ++result.diagnostics.unmatched;
            continue;
        }
        if (!disinfo_ids.empty() && !debunk_ids.empty()) {
            ++result.diagnostics.both_streams;
        }
        const auto emit = [&](StreamLabel label, const std::set<std::string>& ids, std::vector<MatchedPost>& out) {
            MatchedPost m;
            m.post = post;
            m.post.stream_label = label;
            m.label = label;
            m.debunk_ids.assign(ids.begin(), ids.end());
            out.push_back(std::move(m));
        };
        if (!disinfo_ids.empty()) {
            emit(StreamLabel::disinformation, disinfo_ids, result.disinformation);
        }
        if (!debunk_ids.empty()) {
            emit(StreamLabel::debunk, debunk_ids, result.debunk);
        }
    }
    result.diagnostics.disinformation = result.disinformation.size();
    result.diagnostics.debunk = result.debunk.size();
    return result;
}

}  // namespace infospread::ingest
