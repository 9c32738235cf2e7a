#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace infospread {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DD". Throws FormatError on anything else.
[[nodiscard]] Date parse_date(std::string_view text);

/// Parses an ISO-8601 timestamp ("2022-03-01T12:00:00Z", "+02:00" offsets,
/// optional fractional seconds, or a bare date) and converts it to UTC.
[[nodiscard]] Timestamp parse_timestamp(std::string_view text);

[[nodiscard]] std::string format_date(Date d);
[[nodiscard]] std::string format_timestamp(Timestamp t);

/// UTC calendar date of a timestamp.
[[nodiscard]] inline Date to_date(Timestamp t) {
    return std::chrono::floor<std::chrono::days>(t);
}

/// Signed whole-day difference b - a.
[[nodiscard]] inline std::int64_t days_between(Date a, Date b) {
    return (b - a).count();
}

/// Closed calendar interval [first, last].
struct DateRange {
    Date first;
    Date last;

    [[nodiscard]] bool valid() const noexcept { return first <= last; }
    [[nodiscard]] bool contains(Date d) const noexcept { return first <= d && d <= last; }
    [[nodiscard]] std::size_t days() const noexcept {
        return valid() ? static_cast<std::size_t>((last - first).count() + 1) : 0;
    }
};

}  // namespace infospread
