#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsif::csv {

struct Record {
    std::size_t line = 0;  // 1-based line on which the record starts
    std::vector<std::string> fields;
};

struct ReadOptions {
    // Lines whose first character is '#' are skipped (artifact provenance headers).
    bool skip_comments = false;
};

/// RFC-4180 reader: quoted fields may contain separators, doubled quotes and
/// line breaks. Accepts LF and CRLF. Blank lines are skipped.
std::vector<Record> read(std::string_view text, ReadOptions options = {});

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Plain decimal/scientific number; no leading '+', no surrounding spaces.
std::optional<double> parse_double(std::string_view text);

/// Checks that the header record matches `expected` exactly; throws ParseError otherwise.
void expect_header(const std::vector<Record>& records, const std::vector<std::string>& expected);

}  // namespace hsif::csv
