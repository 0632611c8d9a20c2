#include "hsif/csv.hpp"

#include <charconv>
#include <cmath>

#include "hsif/errors.hpp"

namespace hsif::csv {

std::vector<Record> read(std::string_view text, ReadOptions options) {
    std::vector<Record> records;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    // Skip a UTF-8 BOM.
    if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

    while (i < n) {
        if (text[i] == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') {
            ++line;
            i += 2;
            continue;
        }
        if (options.skip_comments && text[i] == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }

        Record rec;
        rec.line = line;
        std::string field;
        bool in_quotes = false;
        bool field_was_quoted = false;
        bool done = false;
        while (!done) {
            if (i >= n) {
                if (in_quotes) throw ParseError("unterminated quoted field", rec.line);
                rec.fields.push_back(std::move(field));
                break;
            }
            const char c = text[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < n && text[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                    } else {
                        in_quotes = false;
                        ++i;
                    }
                } else {
                    if (c == '\n') ++line;
                    field.push_back(c);
                    ++i;
                }
                continue;
            }
            switch (c) {
                case '"':
                    if (!field.empty() || field_was_quoted)
                        throw ParseError("unexpected quote inside unquoted field", line);
                    in_quotes = true;
                    field_was_quoted = true;
                    ++i;
                    break;
                case ',':
                    rec.fields.push_back(std::move(field));
                    field.clear();
                    field_was_quoted = false;
                    ++i;
                    break;
                case '\r':
                    if (i + 1 < n && text[i + 1] == '\n') {
                        i += 2;
                    } else {
                        ++i;
                    }
                    ++line;
                    rec.fields.push_back(std::move(field));
                    done = true;
                    break;
                case '\n':
                    ++i;
                    ++line;
                    rec.fields.push_back(std::move(field));
                    done = true;
                    break;
                default:
                    if (field_was_quoted)
                        throw ParseError("characters after closing quote", line);
                    field.push_back(c);
                    ++i;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double value) {
    char buf[64];
    // Plain notation for everyday magnitudes so 100000 does not print as 1e+05.
    const double mag = std::abs(value);
    const bool plain = mag == 0.0 || (mag >= 1e-5 && mag < 1e15);
    auto [ptr, ec] = plain ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed)
                           : std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw Error("failed to format number");
    return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

void expect_header(const std::vector<Record>& records, const std::vector<std::string>& expected) {
    if (records.empty()) throw ParseError("missing header", 1);
    if (records.front().fields != expected) {
        std::string want;
        for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
        throw ParseError("expected header '" + want + "'", records.front().line);
    }
}

}  // namespace hsif::csv
