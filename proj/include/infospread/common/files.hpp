#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace infospread::files {

[[nodiscard]] std::string read_text(const std::filesystem::path& path);

/// Writes to "<path>.tmp" and renames over the target, so readers never see a
/// half-written artifact.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256.
[[nodiscard]] std::string sha256_hex(std::string_view bytes);
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

}  // namespace infospread::files
