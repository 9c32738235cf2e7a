#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "infospread/ingest/records.hpp"

namespace infospread::ingest {

/// Place name -> country lookup, case- and diacritic-insensitive.
///
/// Source file is TSV `place<TAB>country`; lines starting with '#' are
/// comments. Later duplicates of a folded key are ignored.
class Gazetteer {
public:
    Gazetteer() = default;

    [[nodiscard]] static Gazetteer load(const std::filesystem::path& path);
    [[nodiscard]] static Gazetteer parse(std::string_view tsv);

    void add(std::string_view place, std::string_view country);

    /// Exact lookup of a whole (folded) place name.
    [[nodiscard]] std::optional<std::string> lookup(std::string_view place) const;

    /// Resolves a free-text location. Every contiguous run of up to four
    /// letter tokens is looked up; the longest matching phrase (in code
    /// points) wins and ties go to the rightmost phrase.
    [[nodiscard]] std::optional<std::string> resolve(std::string_view location_raw) const;

    [[nodiscard]] std::size_t size() const noexcept { return places_.size(); }

private:
    std::unordered_map<std::string, std::string> places_;
};

[[nodiscard]] inline std::optional<std::string> resolve_country(std::string_view location_raw,
                                                                const Gazetteer& gazetteer) {
    return gazetteer.resolve(location_raw);
}

struct CountryCoverage {
    std::size_t posts = 0;
    std::size_t with_location = 0;
    std::size_t resolved = 0;
    /// resolved / posts * 100 (0 for no posts).
    double percent = 0.0;
};

/// Fills author_country on every post and reports coverage.
CountryCoverage resolve_authors(std::span<MatchedPost> posts, const Gazetteer& gazetteer);

}  // namespace infospread::ingest
