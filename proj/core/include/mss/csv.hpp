#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mss::csv {

using Row = std::vector<std::string>;

/// One physical record of an RFC 4180 document, with the 1-based line it
/// started on (quoted fields may span lines).
struct Record {
    std::size_t line = 0;
    Row fields;
};

/// Splits CSV text into records. Accepts LF or CRLF line endings, quoted
/// fields with doubled quotes, and ignores blank lines. Throws
/// std::runtime_error on an unterminated quote.
std::vector<Record> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const Row& row);

} // namespace mss::csv
