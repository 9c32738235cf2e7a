#include "infospread/common/date.hpp"

#include <charconv>
#include <cstdio>

#include "infospread/common/error.hpp"

namespace infospread {

namespace {

int parse_fixed(std::string_view text, std::size_t pos, std::size_t width, std::string_view whole) {
    if (pos + width > text.size()) {
        throw FormatError("truncated date/time: '" + std::string(whole) + "'");
    }
    int value = 0;
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + width, value);
    if (ec != std::errc{} || ptr != first + width) {
        throw FormatError("bad digits in date/time: '" + std::string(whole) + "'");
    }
    return value;
}

void expect_char(std::string_view text, std::size_t pos, char c, std::string_view whole) {
    if (pos >= text.size() || text[pos] != c) {
        throw FormatError("malformed date/time: '" + std::string(whole) + "'");
    }
}

Date make_date(int y, int m, int d, std::string_view whole) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw FormatError("invalid calendar date: '" + std::string(whole) + "'");
    }
    return Date{ymd};
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10) {
        throw FormatError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    const int y = parse_fixed(text, 0, 4, text);
    expect_char(text, 4, '-', text);
    const int m = parse_fixed(text, 5, 2, text);
    expect_char(text, 7, '-', text);
    const int d = parse_fixed(text, 8, 2, text);
    return make_date(y, m, d, text);
}

Timestamp parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    if (text.size() < 10) {
        throw FormatError("timestamp too short: '" + std::string(text) + "'");
    }
    const Date day = parse_date(text.substr(0, 10));
    if (text.size() == 10) {
        return Timestamp{day};
    }
    if (text[10] != 'T' && text[10] != ' ') {
        throw FormatError("malformed timestamp: '" + std::string(text) + "'");
    }
    const int hh = parse_fixed(text, 11, 2, text);
    expect_char(text, 13, ':', text);
    const int mm = parse_fixed(text, 14, 2, text);
    int ss = 0;
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        ss = parse_fixed(text, pos + 1, 2, text);
        pos += 3;
    }
    if (hh > 23 || mm > 59 || ss > 60) {
        throw FormatError("time of day out of range: '" + std::string(text) + "'");
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
        }
    }
    seconds offset{0};
    if (pos < text.size()) {
        const char c = text[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            const int oh = parse_fixed(text, pos + 1, 2, text);
            std::size_t next = pos + 3;
            if (next < text.size() && text[next] == ':') {
                ++next;
            }
            const int om = parse_fixed(text, next, 2, text);
            offset = hours{oh} + minutes{om};
            if (c == '-') {
                offset = -offset;
            }
            pos = next + 2;
        }
    }
    if (pos != text.size()) {
        throw FormatError("trailing characters in timestamp: '" + std::string(text) + "'");
    }
    return Timestamp{day} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    const Date d = to_date(t);
    const auto tod = std::chrono::hh_mm_ss{t - Timestamp{d}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(tod.hours().count()),
                  static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
    return format_date(d) + buf;
}

}  // namespace infospread
