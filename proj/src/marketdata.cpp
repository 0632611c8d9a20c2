#include "hsif/marketdata.hpp"

#include <algorithm>
#include <cmath>

#include "hsif/csv.hpp"
#include "hsif/errors.hpp"

namespace hsif::marketdata {

std::string check_candle(const Candle& c) {
    for (double v : {c.open, c.high, c.low, c.close, c.volume}) {
        if (!std::isfinite(v)) return "non-finite value";
    }
    if (c.open <= 0 || c.high <= 0 || c.low <= 0 || c.close <= 0) return "non-positive price";
    if (c.volume < 0) return "negative volume";
    if (!(c.low <= c.high && c.low <= c.open && c.open <= c.high && c.low <= c.close &&
          c.close <= c.high)) {
        return "OHLC bounds violated";
    }
    return {};
}

CandleSeries::CandleSeries(std::vector<Candle> candles) : candles_(std::move(candles)) {
    for (std::size_t i = 0; i < candles_.size(); ++i) {
        if (auto why = check_candle(candles_[i]); !why.empty()) {
            throw InvalidArgument(why + " on " + candles_[i].date.to_string());
        }
        if (i > 0 && candles_[i].date <= candles_[i - 1].date) {
            throw InvalidArgument("non-ascending dates at " + candles_[i].date.to_string());
        }
    }
}

namespace {

template <typename F>
std::vector<double> column(std::span<const Candle> candles, F field) {
    std::vector<double> out;
    out.reserve(candles.size());
    for (const auto& c : candles) out.push_back(field(c));
    return out;
}

}  // namespace

std::vector<double> CandleSeries::opens() const { return column(candles_, [](const Candle& c) { return c.open; }); }
std::vector<double> CandleSeries::highs() const { return column(candles_, [](const Candle& c) { return c.high; }); }
std::vector<double> CandleSeries::lows() const { return column(candles_, [](const Candle& c) { return c.low; }); }
std::vector<double> CandleSeries::closes() const { return column(candles_, [](const Candle& c) { return c.close; }); }
std::vector<double> CandleSeries::volumes() const { return column(candles_, [](const Candle& c) { return c.volume; }); }

std::vector<Date> CandleSeries::dates() const {
    std::vector<Date> out;
    out.reserve(candles_.size());
    for (const auto& c : candles_) out.push_back(c.date);
    return out;
}

CandleSeries CandleSeries::prefix(std::size_t count) const {
    CandleSeries out;
    out.candles_.assign(candles_.begin(), candles_.begin() + static_cast<std::ptrdiff_t>(std::min(count, candles_.size())));
    return out;
}

CandleSeries parse_ohlcv(std::string_view csv_text) {
    const auto records = csv::read(csv_text, {.skip_comments = true});
    csv::expect_header(records, {"date", "open", "high", "low", "close", "volume"});

    std::vector<Candle> candles;
    candles.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 6) throw ParseError("malformed row: expected 6 fields", rec.line);
        Candle c;
        auto date = Date::parse(rec.fields[0]);
        if (!date) throw ParseError("malformed date '" + rec.fields[0] + "'", rec.line);
        c.date = *date;
        double* targets[] = {&c.open, &c.high, &c.low, &c.close, &c.volume};
        for (std::size_t k = 0; k < 5; ++k) {
            auto v = csv::parse_double(rec.fields[k + 1]);
            if (!v) throw ParseError("malformed number '" + rec.fields[k + 1] + "'", rec.line);
            *targets[k] = *v;
        }
        if (auto why = check_candle(c); !why.empty()) throw ParseError(why, rec.line);
        if (!candles.empty()) {
            if (c.date == candles.back().date) throw ParseError("duplicate date", rec.line);
            if (c.date < candles.back().date) throw ParseError("non-ascending dates", rec.line);
        }
        candles.push_back(c);
    }
    return CandleSeries(std::move(candles));
}

std::string serialize_ohlcv(const CandleSeries& series) {
    std::string out(kOhlcvHeader);
    out.push_back('\n');
    for (const auto& c : series.candles()) {
        out += c.date.to_string();
        for (double v : {c.open, c.high, c.low, c.close, c.volume}) {
            out.push_back(',');
            out += csv::format_double(v);
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<Date> validate_gaps(const CandleSeries& series) {
    std::vector<Date> gaps;
    for (std::size_t i = 1; i < series.size(); ++i) {
        for (Date d = series[i - 1].date.next(); d < series[i].date; d = d.next()) gaps.push_back(d);
    }
    return gaps;
}

}  // namespace hsif::marketdata
