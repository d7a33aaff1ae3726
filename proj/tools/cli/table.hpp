#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mss/discrepancy.hpp"

namespace mss::cli {

enum class Format { Csv, Json, Markdown };

std::optional<Format> format_from_string(std::string_view text);
std::string_view extension(Format format);

/// A named table of pre-formatted cells. Empty cells mean "absent".
struct Table {
    std::string name;
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

/// Tables plus per-table discrepancy lists; every key in `diffs` is always
/// present, possibly empty.
struct Bundle {
    std::vector<Table> tables;
    std::map<std::string, DiscrepancyList> diffs;
};

std::string fixed(double value, int decimals);
std::string significant(double value, int digits);
std::string integer(long value);
std::string optional_fixed(const std::optional<double>& value, int decimals);

std::string render_table(const Table& table, Format format);
/// The whole bundle as one document. `stamp`, when set, is added as a
/// generated-at line.
std::string render_bundle(const Bundle& bundle, Format format,
                          const std::optional<std::string>& stamp = std::nullopt);
Table diffs_table(const std::map<std::string, DiscrepancyList>& diffs);

} // namespace mss::cli
