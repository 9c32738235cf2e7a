#include "infospread/ingest/filter.hpp"

#include "infospread/common/error.hpp"
#include "infospread/common/text.hpp"

namespace infospread::ingest {

FilterResult filter_records(std::span<const DebunkRecord> records, std::span<const std::string> keywords,
                            DateRange window) {
    std::vector<std::string> needles;
    for (const auto& k : keywords) {
        std::string n = text::normalize_lower(text::trim(k));
        if (!n.empty()) {
            needles.push_back(std::move(n));
        }
    }
    if (needles.empty()) {
        throw PreconditionError("filter_records: keyword list is empty");
    }
    if (!window.valid()) {
        throw PreconditionError("filter_records: window end precedes window start");
    }

    FilterResult result;
    for (const auto& rec : records) {
        if (!window.contains(rec.date_published)) {
            result.rejects.push_back({rec.id, "out_of_window"});
            continue;
        }
        const std::string haystack = text::normalize_lower(rec.filter_text());
        bool hit = false;
        for (const auto& n : needles) {
            if (haystack.find(n) != std::string::npos) {
                hit = true;
                break;
            }
        }
        if (hit) {
            result.kept.push_back(rec);
        } else {
            result.rejects.push_back({rec.id, "no_keyword"});
        }
    }
    result.empty_warning = result.kept.empty();
    return result;
}

}  // namespace infospread::ingest
