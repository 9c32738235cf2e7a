#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace infospread::text {

/// NFC-normalized, lowercased copy of a UTF-8 string.
[[nodiscard]] std::string normalize_lower(std::string_view utf8);

/// Lowercased copy with diacritics removed (NFD, drop combining marks) and
/// runs of whitespace collapsed to one space. Used for gazetteer keys.
[[nodiscard]] std::string fold_for_lookup(std::string_view utf8);

/// Splits on every non-letter code point after lowercasing.
[[nodiscard]] std::vector<std::string> letter_tokens(std::string_view utf8);

[[nodiscard]] std::string trim(std::string_view s);

[[nodiscard]] std::vector<std::string> split(std::string_view s, char sep);

[[nodiscard]] bool starts_with_ci(std::string_view s, std::string_view prefix);

/// ASCII-only lowercase; used for URL schemes and hosts.
[[nodiscard]] std::string ascii_lower(std::string_view s);

}  // namespace infospread::text
