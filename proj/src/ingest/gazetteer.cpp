#include "infospread/ingest/gazetteer.hpp"

#include <sstream>
#include <vector>

#include "infospread/common/error.hpp"
#include "infospread/common/files.hpp"
#include "infospread/common/text.hpp"

namespace infospread::ingest {

namespace {

std::size_t code_points(std::string_view utf8) {
    std::size_t n = 0;
    for (char c : utf8) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++n;
        }
    }
    return n;
}

constexpr std::size_t kMaxPhraseTokens = 4;

}  // namespace

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
    try {
        return parse(files::read_text(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

Gazetteer Gazetteer::parse(std::string_view tsv) {
    Gazetteer g;
    std::istringstream in{std::string(tsv)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw FormatError("gazetteer line " + std::to_string(line_no) + ": expected place<TAB>country");
        }
        g.add(line.substr(0, tab), text::trim(line.substr(tab + 1)));
    }
    return g;
}

void Gazetteer::add(std::string_view place, std::string_view country) {
    // Keys are rebuilt from letter tokens so that "Kyiv, Ukraine" style
    // punctuation never matters on either side.
    std::string key;
    for (const auto& tok : text::letter_tokens(text::fold_for_lookup(place))) {
        if (!key.empty()) {
            key.push_back(' ');
        }
        key += tok;
    }
    if (key.empty() || country.empty()) {
        return;
    }
    places_.try_emplace(std::move(key), std::string(country));
}

std::optional<std::string> Gazetteer::lookup(std::string_view place) const {
    std::string key;
    for (const auto& tok : text::letter_tokens(text::fold_for_lookup(place))) {
        if (!key.empty()) {
            key.push_back(' ');
        }
        key += tok;
    }
    const auto it = places_.find(key);
    if (it == places_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::string> Gazetteer::resolve(std::string_view location_raw) const {
    const std::vector<std::string> tokens = text::letter_tokens(text::fold_for_lookup(location_raw));
    std::optional<std::string> best;
    std::size_t best_len = 0;
    for (std::size_t start = 0; start < tokens.size(); ++start) {
        std::string phrase;
        for (std::size_t n = 0; n < kMaxPhraseTokens && start + n < tokens.size(); ++n) {
            if (n > 0) {
                phrase.push_back(' ');
            }
            phrase += tokens[start + n];
            const auto it = places_.find(phrase);
            if (it == places_.end()) {
                continue;
            }
            const std::size_t len = code_points(phrase);
            // ">=" hands ties to the phrase that starts later.
            if (len >= best_len) {
                best_len = len;
                best = it->second;
            }
        }
    }
    return best;
}

CountryCoverage resolve_authors(std::span<MatchedPost> posts, const Gazetteer& gazetteer) {
    CountryCoverage cov;
    cov.posts = posts.size();
    for (auto& m : posts) {
        m.author_country.reset();
        if (!m.post.author_location_raw) {
            continue;
        }
        ++cov.with_location;
        m.author_country = gazetteer.resolve(*m.post.author_location_raw);
        if (m.author_country) {
            ++cov.resolved;
        }
    }
    cov.percent = cov.posts == 0 ? 0.0 : 100.0 * static_cast<double>(cov.resolved) / static_cast<double>(cov.posts);
    return cov;
}

}  // namespace infospread::ingest
