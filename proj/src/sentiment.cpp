#include "hsif/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hsif/csv.hpp"
#include "hsif/errors.hpp"

namespace hsif::sentiment {

namespace {

/// Byte length of a Unicode White_Space code point starting at s[i], or 0.
std::size_t whitespace_length(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 == ' ' || (b0 >= 0x09 && b0 <= 0x0D)) return 1;
    auto byte = [&](std::size_t k) { return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u; };
    if (b0 == 0xC2 && (byte(1) == 0x85 || byte(1) == 0xA0)) return 2;  // NEL, NBSP
    if (b0 == 0xE1 && byte(1) == 0x9A && byte(2) == 0x80) return 3;    // U+1680
    if (b0 == 0xE2 && byte(1) == 0x80) {
        const unsigned b2 = byte(2);
        // U+2000..U+200A, U+2028, U+2029, U+202F
        if ((b2 >= 0x80 && b2 <= 0x8A) || b2 == 0xA8 || b2 == 0xA9 || b2 == 0xAF) return 3;
    }
    if (b0 == 0xE2 && byte(1) == 0x81 && byte(2) == 0x9F) return 3;  // U+205F
    if (b0 == 0xE3 && byte(1) == 0x80 && byte(2) == 0x80) return 3;  // U+3000
    return 0;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0, start = 0;
    bool in_token = false;
    while (i < s.size()) {
        if (const auto ws = whitespace_length(s, i); ws > 0) {
            if (in_token) out.push_back(s.substr(start, i - start));
            in_token = false;
            i += ws;
        } else {
            if (!in_token) start = i;
            in_token = true;
            ++i;
        }
    }
    if (in_token) out.push_back(s.substr(start));
    return out;
}

Date parse_date_field(const std::string& field, std::size_t line) {
    auto d = Date::parse(field);
    if (!d) throw ParseError("malformed date '" + field + "'", line);
    return *d;
}

double parse_probability(const std::string& field, std::size_t line) {
    auto v = csv::parse_double(field);
    if (!v) throw ParseError("malformed number '" + field + "'", line);
    if (*v < 0.0 || *v > 1.0) throw ParseError("probability outside [0,1]", line);
    return *v;
}

double sorted_mean(std::vector<double>& xs) {
    // Summing in sorted order makes the mean independent of tweet order.
    std::sort(xs.begin(), xs.end());
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

std::string clean_tweet(std::string_view text) {
    std::string out;
    for (auto tok : tokens(text)) {
        if (!out.empty()) out.push_back(' ');
        if (tok.find('@') != std::string_view::npos) {
            out += "@user";
        } else if (tok.find("http") != std::string_view::npos) {
            out += "http";
        } else {
            out += tok;
        }
    }
    return out;
}

std::vector<TweetRecord> parse_tweets(std::string_view csv_text) {
    const auto records = csv::read(csv_text);
    csv::expect_header(records, {"date", "text"});
    std::vector<TweetRecord> out;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 2) throw ParseError("malformed row: expected 2 fields", rec.line);
        TweetRecord t{parse_date_field(rec.fields[0], rec.line), rec.fields[1]};
        if (tokens(t.text).empty()) throw ParseError("empty tweet text", rec.line);
        out.push_back(std::move(t));
    }
    return out;
}

std::string serialize_tweets(const std::vector<TweetRecord>& tweets) {
    std::string out = "date,text\n";
    for (const auto& t : tweets) out += t.date.to_string() + "," + csv::escape(t.text) + "\n";
    return out;
}

std::vector<ScoredTweet> ingest_scores(std::string_view csv_text) {
    const auto records = csv::read(csv_text);
    csv::expect_header(records, {"date", "p_pos", "p_neu", "p_neg"});
    std::vector<ScoredTweet> out;
    out.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 4) throw ParseError("malformed row: expected 4 fields", rec.line);
        ScoredTweet s{parse_date_field(rec.fields[0], rec.line), parse_probability(rec.fields[1], rec.line),
                      parse_probability(rec.fields[2], rec.line), parse_probability(rec.fields[3], rec.line)};
        if (std::abs(s.p_pos + s.p_neu + s.p_neg - 1.0) > kProbabilityTolerance) {
            throw ParseError("probabilities do not sum to 1", rec.line);
        }
        out.push_back(s);
    }
    return out;
}

std::vector<DailySentiment> aggregate_daily(const std::vector<ScoredTweet>& scored, Date first, Date last) {
    if (last < first) throw InvalidArgument("empty date span");
    struct Bucket {
        std::vector<double> pos, neu, neg;
    };
    std::map<Date, Bucket> by_day;
    for (const auto& s : scored) {
        if (s.date < first || s.date > last) {
            throw InvalidArgument("scored tweet dated " + s.date.to_string() + " outside span " +
                                  first.to_string() + ".." + last.to_string());
        }
        auto& b = by_day[s.date];
        b.pos.push_back(s.p_pos);
        b.neu.push_back(s.p_neu);
        b.neg.push_back(s.p_neg);
    }
    std::vector<DailySentiment> out;
    out.reserve(static_cast<std::size_t>(last - first) + 1);
    for (Date d = first; d <= last; d = d.next()) {
        auto it = by_day.find(d);
        if (it == by_day.end()) {
            out.push_back({d, 0.0, 1.0, 0.0});
        } else {
            auto& b = it->second;
            out.push_back({d, sorted_mean(b.pos), sorted_mean(b.neu), sorted_mean(b.neg)});
        }
    }
    return out;
}

std::string serialize_daily(const std::vector<DailySentiment>& days) {
    std::string out = "date,pos,neu,neg\n";
    for (const auto& d : days) {
        out += d.date.to_string() + "," + csv::format_double(d.pos) + "," + csv::format_double(d.neu) + "," +
               csv::format_double(d.neg) + "\n";
    }
    return out;
}

std::vector<DailySentiment> parse_daily(std::string_view csv_text) {
    const auto records = csv::read(csv_text, {.skip_comments = true});
    csv::expect_header(records, {"date", "pos", "neu", "neg"});
    std::vector<DailySentiment> out;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 4) throw ParseError("malformed row: expected 4 fields", rec.line);
        DailySentiment d{parse_date_field(rec.fields[0], rec.line), parse_probability(rec.fields[1], rec.line),
                         parse_probability(rec.fields[2], rec.line), parse_probability(rec.fields[3], rec.line)};
        if (!out.empty() && d.date <= out.back().date) throw ParseError("non-ascending dates", rec.line);
        out.push_back(d);
    }
    return out;
}

}  // namespace hsif::sentiment
