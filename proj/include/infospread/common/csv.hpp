#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace infospread::csv {

using Row = std::vector<std::string>;

/// RFC-4180 reader: quoted fields, doubled quotes, embedded newlines.
/// Throws FormatError with the 1-based line number of the offending record.
[[nodiscard]] std::vector<Row> parse(std::string_view content);
[[nodiscard]] std::vector<Row> read_file(const std::filesystem::path& path);

/// A parsed table with a header row; fields are looked up by column name.
class Table {
public:
    explicit Table(std::vector<Row> rows);

    [[nodiscard]] const Row& header() const noexcept { return header_; }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] const Row& row(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] bool has_column(std::string_view name) const;
    /// Index of a column; throws FormatError when the column is missing.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    /// Field value, or "" when the row is short.
    [[nodiscard]] const std::string& get(std::size_t row, std::size_t col) const;

private:
    Row header_;
    std::vector<Row> rows_;
};

[[nodiscard]] std::string escape(std::string_view field);
[[nodiscard]] std::string join(const Row& row);

/// Shortest round-trippable text for a double ("%.17g" trimmed), deterministic.
[[nodiscard]] std::string real(double v);
/// Fixed-point text with the given number of decimals.
[[nodiscard]] std::string fixed(double v, int decimals);

}  // namespace infospread::csv
