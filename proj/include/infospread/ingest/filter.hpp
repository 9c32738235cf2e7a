#pragma once

#include <span>
#include <string>
#include <vector>

#include "infospread/common/date.hpp"
#include "infospread/ingest/records.hpp"

namespace infospread::ingest {

struct FilterResult {
    std::vector<DebunkRecord> kept;
    /// Reasons: "out_of_window" (checked first) or "no_keyword".
    std::vector<Reject> rejects;
    /// Set when nothing survived; an empty result is a warning, not an error.
    bool empty_warning = false;
};

/// Keeps records dated inside the window whose claim (English translation
/// when present) contains at least one keyword as a case-insensitive
/// substring after NFC normalization. Throws PreconditionError on an empty
/// keyword list or an inverted window.
[[nodiscard]] FilterResult filter_records(std::span<const DebunkRecord> records,
                                          std::span<const std::string> keywords, DateRange window);

}  // namespace infospread::ingest
