#include <gtest/gtest.h>

#include <random>

#include "hsif/csv.hpp"
#include "hsif/errors.hpp"
#include "hsif/marketdata.hpp"

using namespace hsif;
using namespace hsif::marketdata;

namespace {

std::string expect_parse_error(const std::string& text) {
    try {
        parse_ohlcv(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    ADD_FAILURE() << "no ParseError for:\n" << text;
    return {};
}

}  // namespace

TEST(Date, ParseAndFormat) {
    auto d = Date::parse("2020-02-29");
    ASSERT_TRUE(d);
    EXPECT_EQ(d->to_string(), "2020-02-29");
    EXPECT_EQ(d->next().to_string(), "2020-03-01");
    EXPECT_FALSE(Date::parse("2021-02-29"));
    EXPECT_FALSE(Date::parse("2021-1-01"));
    EXPECT_FALSE(Date::parse("2021-01-01T00"));
    EXPECT_EQ(Date::from_ymd(1970, 1, 1).days_since_epoch(), 0);
    EXPECT_EQ(Date::from_ymd(2022, 12, 31) - Date::from_ymd(2015, 4, 6), 2826);
}

TEST(ParseOhlcv, ThreeWellFormedRows) {
    const auto s = parse_ohlcv(
        "date,open,high,low,close,volume\n"
        "2020-01-01,10,11,9,10.5,100\n"
        "2020-01-02,10.5,12,10,11,200\n"
        "2020-01-03,11,11.5,10.2,10.4,0\n");
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[1].high, 12.0);
    EXPECT_EQ(s[2].volume, 0.0);
    EXPECT_EQ(s.back().date.to_string(), "2020-01-03");
}

TEST(ParseOhlcv, AcceptsCrlf) {
    const auto s = parse_ohlcv("date,open,high,low,close,volume\r\n2020-01-01,1,2,0.5,1.5,3\r\n");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].close, 1.5);
}

TEST(ParseOhlcv, NonAscendingDatesReportLine) {
    const auto msg = expect_parse_error(
        "date,open,high,low,close,volume\n"
        "2020-01-02,10,11,9,10,1\n"
        "2020-01-01,10,11,9,10,1\n");
    EXPECT_EQ(msg, "non-ascending dates at line 3");
}

TEST(ParseOhlcv, DuplicateDate) {
    const auto msg = expect_parse_error(
        "date,open,high,low,close,volume\n"
        "2020-01-01,10,11,9,10,1\n"
        "2020-01-01,10,11,9,10,1\n");
    EXPECT_EQ(msg, "duplicate date at line 3");
}

TEST(ParseOhlcv, OpenAboveHigh) {
    const auto msg = expect_parse_error("date,open,high,low,close,volume\n2020-01-01,10,9,8,9.5,100\n");
    EXPECT_EQ(msg, "OHLC bounds violated at line 2");
}

TEST(ParseOhlcv, OtherErrors) {
    EXPECT_EQ(expect_parse_error("date,open,high,low,close,volume\n2020-01-01,0,1,0,1,1\n"),
              "non-positive price at line 2");
    EXPECT_EQ(expect_parse_error("date,open,high,low,close,volume\n2020-01-01,1,1,1,1,-1\n"),
              "negative volume at line 2");
    EXPECT_EQ(expect_parse_error("date,open,high,low,close,volume\n2020-01-01,1,1,1\n"),
              "malformed row: expected 6 fields at line 2");
    EXPECT_EQ(expect_parse_error("date,open,high,low,close,volume\n2020-01-01,1,x,1,1,1\n"),
              "malformed number 'x' at line 2");
    EXPECT_EQ(expect_parse_error("date,open,high,low,close,volume\n01/02/2020,1,1,1,1,1\n"),
              "malformed date '01/02/2020' at line 2");
    EXPECT_EQ(expect_parse_error("date,o,h,l,c,v\n"),
              "expected header 'date,open,high,low,close,volume' at line 1");
}

TEST(ValidateGaps, Examples) {
    auto make = [](std::initializer_list<const char*> dates) {
        std::vector<Candle> cs;
        for (auto d : dates) cs.push_back({*Date::parse(d), 1, 1, 1, 1, 1});
        return CandleSeries(cs);
    };
    EXPECT_TRUE(validate_gaps(make({"2020-01-01", "2020-01-02", "2020-01-03", "2020-01-04", "2020-01-05"})).empty());
    const auto gaps = validate_gaps(make({"2020-01-01", "2020-01-03"}));
    ASSERT_EQ(gaps.size(), 1u);
    EXPECT_EQ(gaps[0].to_string(), "2020-01-02");
    EXPECT_TRUE(validate_gaps(make({"2020-01-01"})).empty());
}

// Random candles with prices carrying at most 10 fractional digits survive
// serialize -> parse bit-exactly, and every accepted candle honours the bounds.
TEST(ParseOhlcv, RoundTripProperty) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> digits(0, 10);
    auto quantize = [&](double v) {
        const double scale = std::pow(10.0, digits(rng));
        return std::max(std::round(v * scale) / scale, 1.0 / scale);
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Candle> cs;
        Date d = Date::from_ymd(2018, 1, 1);
        const int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            double a = quantize(1 + 1000 * u(rng)), b = quantize(1 + 1000 * u(rng));
            double lo = std::min(a, b), hi = std::max(a, b);
            double open = std::clamp(quantize(lo + (hi - lo) * u(rng)), lo, hi);
            double close = std::clamp(quantize(lo + (hi - lo) * u(rng)), lo, hi);
            cs.push_back({d, open, hi, lo, close, quantize(1e6 * u(rng))});
            d = d + 1 + static_cast<int>(rng() % 3);
        }
        const CandleSeries series(cs);
        const auto text = serialize_ohlcv(series);
        const auto back = parse_ohlcv(text);
        ASSERT_EQ(back, series);
        EXPECT_EQ(serialize_ohlcv(back), text);
        for (const auto& c : back.candles()) {
            EXPECT_LE(c.low, c.open);
            EXPECT_LE(c.open, c.high);
            EXPECT_LE(c.low, c.close);
            EXPECT_LE(c.close, c.high);
            EXPECT_GE(c.volume, 0.0);
        }
    }
}

TEST(Csv, QuotedFieldsAndLines) {
    const auto recs = csv::read("a,b\n\"x,1\",\"he said \"\"hi\"\"\nline\"\n\nz,\n");
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_EQ(recs[1].fields[0], "x,1");
    EXPECT_EQ(recs[1].fields[1], "he said \"hi\"\nline");
    EXPECT_EQ(recs[2].line, 5u);
    EXPECT_EQ(recs[2].fields.size(), 2u);
    EXPECT_EQ(recs[2].fields[1], "");
    EXPECT_THROW(csv::read("\"open"), ParseError);
    EXPECT_EQ(csv::escape("a\"b"), "\"a\"\"b\"");
}
