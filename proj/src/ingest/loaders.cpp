#include "infospread/ingest/loaders.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "infospread/common/csv.hpp"
#include "infospread/common/error.hpp"
#include "infospread/common/files.hpp"
#include "infospread/common/text.hpp"
#include "infospread/ingest/url.hpp"

namespace infospread::ingest {

using nlohmann::json;

namespace {

std::size_t line_of_offset(std::string_view content, std::size_t offset) {
    offset = std::min(offset, content.size());
    return 1 + static_cast<std::size_t>(std::count(content.begin(), content.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

json parse_json_document(std::string_view content, std::string_view what) {
    try {
        return json::parse(content);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(what) + ": JSON parse error at line " +
                          std::to_string(line_of_offset(content, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
    }
}

std::string string_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return {};
    }
    if (it->is_string()) {
        return text::trim(it->get<std::string>());
    }
    if (it->is_number_integer()) {
        return std::to_string(it->get<long long>());
    }
    return {};
}

std::string language_of(const json& review) {
    const auto it = review.find("inLanguage");
    if (it == review.end()) {
        return "und";
    }
    if (it->is_string() && !it->get<std::string>().empty()) {
        return it->get<std::string>();
    }
    if (it->is_object()) {
        for (const char* key : {"alternateName", "name"}) {
            const std::string v = string_field(*it, key);
            if (!v.empty()) {
                return v;
            }
        }
    }
    return "und";
}

void collect_urls(const json& node, std::vector<std::string>& out) {
    if (node.is_string()) {
        out.push_back(text::trim(node.get<std::string>()));
    } else if (node.is_array()) {
        for (const auto& e : node) {
            collect_urls(e, out);
        }
    } else if (node.is_object()) {
        const auto it = node.find("url");
        if (it != node.end()) {
            collect_urls(*it, out);
        }
    }
}

void push_unique(std::vector<std::string>& out, std::string value) {
    if (std::find(out.begin(), out.end(), value) == out.end()) {
        out.push_back(std::move(value));
    }
}

/// Keeps the parseable links; reports the rest as warnings.
std::vector<std::string> clean_links(const std::vector<std::string>& raw, const std::string& id,
                                     std::vector<std::string>& warnings) {
    std::vector<std::string> links;
    for (const auto& link : raw) {
        if (link.empty()) {
            continue;
        }
        try {
            (void)parse_url(link);
            push_unique(links, link);
        } catch (const FormatError&) {
            warnings.push_back(id + ": skipped unparseable link '" + link + "'");
        }
    }
    return links;
}

void gather_reviews(const json& node, std::vector<const json*>& out) {
    if (node.is_array()) {
        for (const auto& e : node) {
            gather_reviews(e, out);
        }
        return;
    }
    if (!node.is_object()) {
        return;
    }
    if (const auto feed = node.find("dataFeedElement"); feed != node.end()) {
        gather_reviews(*feed, out);
        return;
    }
    if (const auto item = node.find("item"); item != node.end() && string_field(node, "@type") != "ClaimReview") {
        gather_reviews(*item, out);
        return;
    }
    out.push_back(&node);
}

/// Applies the checks shared by both debunk formats and appends the record.
void admit(DebunkLoad& load, std::set<std::string>& seen, DebunkRecord rec) {
    if (!seen.insert(rec.id).second) {
        load.rejects.push_back({rec.id, "duplicate_id"});
        return;
    }
    try {
        rec.publisher_domain = extract_domain(rec.url);
    } catch (const FormatError&) {
        load.rejects.push_back({rec.id, "invalid_url"});
        return;
    }
    if (rec.link_less()) {
        load.link_less.push_back(rec.id);
    }
    load.records.push_back(std::move(rec));
}

std::vector<std::string> split_list(const std::string& field) {
    std::vector<std::string> out;
    for (auto& part : text::split(field, '|')) {
        std::string t = text::trim(part);
        if (!t.empty()) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::uint64_t counter(const json& obj, const char* key, std::string& error) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return 0;
    }
    if (it->is_number_unsigned()) {
        return it->get<std::uint64_t>();
    }
    if (it->is_number_integer()) {
        const long long v = it->get<long long>();
        if (v < 0) {
            error = std::string("negative_counter:") + key;
            return 0;
        }
        return static_cast<std::uint64_t>(v);
    }
    error = std::string("bad_counter:") + key;
    return 0;
}

std::vector<std::string> string_list(const json& obj, const char* key) {
    std::vector<std::string> out;
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) {
        return out;
    }
    for (const auto& e : *it) {
        if (e.is_string()) {
            out.push_back(e.get<std::string>());
        }
    }
    return out;
}

}  // namespace

DebunkFormat parse_debunk_format(std::string_view text) {
    if (text == "claimreview_json") {
        return DebunkFormat::claimreview_json;
    }
    if (text == "euvsdisinfo_table") {
        return DebunkFormat::euvsdisinfo_table;
    }
    throw FormatError("unknown debunk format '" + std::string(text) + "'");
}

DebunkLoad parse_claimreview(std::string_view content) {
    const json root = parse_json_document(content, "claimreview feed");
    std::vector<const json*> reviews;
    gather_reviews(root, reviews);

    DebunkLoad load;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < reviews.size(); ++i) {
        const json& r = *reviews[i];
        DebunkRecord rec;
        rec.source = "claimreview";
        rec.url = string_field(r, "url");
        rec.id = string_field(r, "@id");
        if (rec.id.empty()) {
            rec.id = string_field(r, "identifier");
        }
        if (rec.id.empty()) {
            rec.id = rec.url;
        }
        const std::string label = rec.id.empty() ? "review#" + std::to_string(i) : rec.id;
        if (rec.url.empty()) {
            load.rejects.push_back({label, "missing_field:url"});
            continue;
        }
        const std::string date = string_field(r, "datePublished");
        if (date.size() < 10) {
            load.rejects.push_back({label, "missing_field:datePublished"});
            continue;
        }
        try {
            rec.date_published = parse_date(std::string_view(date).substr(0, 10));
        } catch (const FormatError&) {
            load.rejects.push_back({label, "invalid_date"});
            continue;
        }
        rec.claim_text = string_field(r, "claimReviewed");
        if (rec.claim_text.empty()) {
            load.rejects.push_back({label, "missing_field:claimReviewed"});
            continue;
        }
        if (std::string en = string_field(r, "claimReviewedEn"); !en.empty()) {
            rec.claim_text_en = std::move(en);
        }
        rec.language = language_of(r);

        std::vector<std::string> raw;
        if (const auto item = r.find("itemReviewed"); item != r.end()) {
            for (const char* key : {"appearance", "firstAppearance", "url"}) {
                if (const auto it = item->find(key); it != item->end()) {
                    collect_urls(*it, raw);
                }
            }
        }
        rec.disinfo_links = clean_links(raw, label, load.warnings);
        admit(load, seen, std::move(rec));
    }
    return load;
}

DebunkLoad parse_euvsdisinfo(std::string_view content) {
    const csv::Table table(csv::parse(content));
    const std::size_t c_id = table.column("id");
    const std::size_t c_url = table.column("url");
    const std::size_t c_date = table.column("date_published");
    const std::size_t c_claim = table.column("claim_text");
    const auto optional_column = [&](std::string_view name) {
        return table.has_column(name) ? table.column(name) : std::size_t(-1);
    };
    const std::size_t c_en = optional_column("claim_text_en");
    const std::size_t c_lang = optional_column("language");
    const std::size_t c_links = optional_column("disinfo_links");
    const std::size_t c_countries = optional_column("affected_countries");
    const auto get = [&](std::size_t row, std::size_t col) -> std::string {
        return col == std::size_t(-1) ? std::string{} : text::trim(table.get(row, col));
    };

    DebunkLoad load;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < table.size(); ++i) {
        DebunkRecord rec;
        rec.source = "euvsdisinfo";
        rec.id = get(i, c_id);
        const std::string label = rec.id.empty() ? "row#" + std::to_string(i + 2) : rec.id;
        if (rec.id.empty()) {
            load.rejects.push_back({label, "missing_field:id"});
            continue;
        }
        rec.url = get(i, c_url);
        if (rec.url.empty()) {
            load.rejects.push_back({label, "missing_field:url"});
            continue;
        }
        const std::string date = get(i, c_date);
        if (date.empty()) {
            load.rejects.push_back({label, "missing_field:date_published"});
            continue;
        }
        try {
            rec.date_published = parse_date(std::string_view(date).substr(0, std::min<std::size_t>(10, date.size())));
        } catch (const FormatError&) {
            load.rejects.push_back({label, "invalid_date"});
            continue;
        }
        rec.claim_text = get(i, c_claim);
        if (rec.claim_text.empty()) {
            load.rejects.push_back({label, "missing_field:claim_text"});
            continue;
        }
        if (std::string en = get(i, c_en); !en.empty()) {
            rec.claim_text_en = std::move(en);
        }
        if (std::string lang = get(i, c_lang); !lang.empty()) {
            rec.language = std::move(lang);
        }
        rec.disinfo_links = clean_links(split_list(get(i, c_links)), label, load.warnings);
        if (c_countries != std::size_t(-1)) {
            rec.affected_countries = split_list(get(i, c_countries));
        }
        admit(load, seen, std::move(rec));
    }
    return load;
}

DebunkLoad load_debunks(const std::filesystem::path& path, DebunkFormat format) {
    const std::string content = files::read_text(path);
    try {
        return format == DebunkFormat::claimreview_json ? parse_claimreview(content) : parse_euvsdisinfo(content);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

PostLoad parse_posts(std::string_view content) {
    PostLoad load;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(content)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError("posts line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!obj.is_object()) {
            throw FormatError("posts line " + std::to_string(line_no) + ": expected a JSON object");
        }
        PostRecord p;
        p.id = string_field(obj, "id");
        const std::string label = p.id.empty() ? "line#" + std::to_string(line_no) : p.id;
        if (p.id.empty()) {
            load.rejects.push_back({label, "missing_field:id"});
            continue;
        }
        if (!seen.insert(p.id).second) {
            load.rejects.push_back({label, "duplicate_id"});
            continue;
        }
        const std::string created = string_field(obj, "created_at");
        if (created.empty()) {
            load.rejects.push_back({label, "missing_field:created_at"});
            continue;
        }
        try {
            p.created_at = parse_timestamp(created);
        } catch (const FormatError&) {
            load.rejects.push_back({label, "invalid_timestamp"});
            continue;
        }
        std::string error;
        p.author_followers = counter(obj, "author_followers", error);
        p.author_tweet_count = counter(obj, "author_tweet_count", error);
        p.retweet_count = counter(obj, "retweet_count", error);
        p.reply_count = counter(obj, "reply_count", error);
        p.like_count = counter(obj, "like_count", error);
        p.quote_count = counter(obj, "quote_count", error);
        if (!error.empty()) {
            load.rejects.push_back({label, error});
            continue;
        }
        p.text = string_field(obj, "text");
        if (std::string loc = string_field(obj, "author_location"); !loc.empty()) {
            p.author_location_raw = std::move(loc);
        }
        p.shared_urls = string_list(obj, "urls");
        for (auto& tag : string_list(obj, "hashtags")) {
            std::string t = text::normalize_lower(tag);
            if (t.starts_with('#')) {
                t.erase(0, 1);
            }
            if (!t.empty()) {
                p.hashtags.push_back(std::move(t));
            }
        }
        if (const auto it = obj.find("is_retweet"); it != obj.end() && it->is_boolean()) {
            p.is_retweet = it->get<bool>();
        }
        load.records.push_back(std::move(p));
    }
    return load;
}

PostLoad load_posts(const std::filesystem::path& path) {
    const std::string content = files::read_text(path);
    try {
        return parse_posts(content);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::string> load_keywords(const std::filesystem::path& path) {
    std::vector<std::string> keywords;
    std::istringstream in(files::read_text(path));
    std::string line;
    while (std::getline(in, line)) {
        std::string t = text::trim(line);
        if (!t.empty() && t.front() != '#') {
            keywords.push_back(std::move(t));
        }
    }
    return keywords;
}

json to_json(const DebunkRecord& d) {
    json j{{"id", d.id},
           {"url", d.url},
           {"publisher_domain", d.publisher_domain},
           {"date_published", format_date(d.date_published)},
           {"claim_text", d.claim_text},
           {"language", d.language},
           {"disinfo_links", d.disinfo_links},
           {"source", d.source}};
    j["claim_text_en"] = d.claim_text_en ? json(*d.claim_text_en) : json(nullptr);
    j["affected_countries"] = d.affected_countries ? json(*d.affected_countries) : json(nullptr);
    return j;
}

DebunkRecord debunk_from_json(const json& j) {
    DebunkRecord d;
    try {
        d.id = j.at("id").get<std::string>();
        d.url = j.at("url").get<std::string>();
        d.publisher_domain = j.at("publisher_domain").get<std::string>();
        d.date_published = parse_date(j.at("date_published").get<std::string>());
        d.claim_text = j.at("claim_text").get<std::string>();
        d.language = j.at("language").get<std::string>();
        d.disinfo_links = j.at("disinfo_links").get<std::vector<std::string>>();
        d.source = j.value("source", "");
        if (j.contains("claim_text_en") && !j["claim_text_en"].is_null()) {
            d.claim_text_en = j["claim_text_en"].get<std::string>();
        }
        if (j.contains("affected_countries") && !j["affected_countries"].is_null()) {
            d.affected_countries = j["affected_countries"].get<std::vector<std::string>>();
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("debunk record: ") + e.what());
    }
    return d;
}

json to_json(const MatchedPost& m) {
    const PostRecord& p = m.post;
    json j{{"id", p.id},
           {"created_at", format_timestamp(p.created_at)},
           {"text", p.text},
           {"author_followers", p.author_followers},
           {"author_tweet_count", p.author_tweet_count},
           {"retweet_count", p.retweet_count},
           {"reply_count", p.reply_count},
           {"like_count", p.like_count},
           {"quote_count", p.quote_count},
           {"urls", p.shared_urls},
           {"hashtags", p.hashtags},
           {"is_retweet", p.is_retweet},
           {"stream_label", std::string(to_string(m.label))},
           {"debunk_ids", m.debunk_ids}};
    j["author_location"] = p.author_location_raw ? json(*p.author_location_raw) : json(nullptr);
    j["author_country"] = m.author_country ? json(*m.author_country) : json(nullptr);
    return j;
}

MatchedPost matched_post_from_json(const json& j) {
    MatchedPost m;
    try {
        PostRecord& p = m.post;
        p.id = j.at("id").get<std::string>();
        p.created_at = parse_timestamp(j.at("created_at").get<std::string>());
        p.text = j.value("text", "");
        p.author_followers = j.at("author_followers").get<std::uint64_t>();
        p.author_tweet_count = j.at("author_tweet_count").get<std::uint64_t>();
        p.retweet_count = j.at("retweet_count").get<std::uint64_t>();
        p.reply_count = j.at("reply_count").get<std::uint64_t>();
        p.like_count = j.at("like_count").get<std::uint64_t>();
        p.quote_count = j.at("quote_count").get<std::uint64_t>();
        p.shared_urls = j.at("urls").get<std::vector<std::string>>();
        p.hashtags = j.at("hashtags").get<std::vector<std::string>>();
        p.is_retweet = j.at("is_retweet").get<bool>();
        if (!j["author_location"].is_null()) {
            p.author_location_raw = j["author_location"].get<std::string>();
        }
        m.label = parse_stream_label(j.at("stream_label").get<std::string>());
        p.stream_label = m.label;
        m.debunk_ids = j.at("debunk_ids").get<std::vector<std::string>>();
        if (j.contains("author_country") && !j["author_country"].is_null()) {
            m.author_country = j["author_country"].get<std::string>();
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("matched post: ") + e.what());
    }
    return m;
}

std::string rejects_csv(const std::vector<Reject>& rejects) {
    std::string out = "id,reason\n";
    for (const auto& r : rejects) {
        out += csv::join({r.id, r.reason}) + "\n";
    }
    return out;
}

std::string_view to_string(StreamLabel label) noexcept {
    return label == StreamLabel::disinformation ? "disinformation" : "debunk";
}

StreamLabel parse_stream_label(std::string_view text) {
    if (text == "disinformation") {
        return StreamLabel::disinformation;
    }
    if (text == "debunk") {
        return StreamLabel::debunk;
    }
    throw FormatError("unknown stream label '" + std::string(text) + "'");
}

}  // namespace infospread::ingest
