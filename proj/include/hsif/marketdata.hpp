#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsif/date.hpp"

namespace hsif::marketdata {

/// One trading day of OHLCV data.
struct Candle {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;

    bool operator==(const Candle&) const = default;
};

/// Empty string when the candle satisfies the OHLCV bounds, else a description.
std::string check_candle(const Candle& c);

/// Candles with strictly ascending dates, each satisfying the OHLCV bounds.
class CandleSeries {
public:
    CandleSeries() = default;

    /// Validates every invariant; throws InvalidArgument on the first violation.
    explicit CandleSeries(std::vector<Candle> candles);

    std::span<const Candle> candles() const { return candles_; }
    std::size_t size() const { return candles_.size(); }
    bool empty() const { return candles_.empty(); }
    const Candle& operator[](std::size_t i) const { return candles_[i]; }
    const Candle& front() const { return candles_.front(); }
    const Candle& back() const { return candles_.back(); }

    std::vector<double> opens() const;
    std::vector<double> highs() const;
    std::vector<double> lows() const;
    std::vector<double> closes() const;
    std::vector<double> volumes() const;
    std::vector<Date> dates() const;

    /// First `count` candles.
    CandleSeries prefix(std::size_t count) const;

    bool operator==(const CandleSeries&) const = default;

private:
    std::vector<Candle> candles_;
};

inline constexpr std::string_view kOhlcvHeader = "date,open,high,low,close,volume";

/// Parses an OHLCV CSV (header `date,open,high,low,close,volume`, LF or CRLF).
/// Lines starting with `#` are skipped.
/// Throws ParseError naming the offending line.
CandleSeries parse_ohlcv(std::string_view csv_text);

/// Inverse of parse_ohlcv; numbers use shortest round-trip decimal text, LF endings.
std::string serialize_ohlcv(const CandleSeries& series);

/// Calendar days strictly between the first and last candle that have no candle.
std::vector<Date> validate_gaps(const CandleSeries& series);

}  // namespace hsif::marketdata
