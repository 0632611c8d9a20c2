#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "hsif/feature_frame.hpp"
#include "hsif/marketdata.hpp"

// Technical indicators over daily candles.
//
// Every output is aligned one-to-one with its input and is undefined (nullopt)
// over a warmup prefix, then defined for every later index. Windows must lie
// in [1, series length]; anything else throws InvalidArgument.
//
// Zero-denominator conventions (all outputs stay finite):
//   RSI   100 when average loss is 0, 50 when both averages are 0
//   %K    50 when the window high equals the window low
//   BOP   0 when H == L
//   CMO   0 when Su + Sd == 0
//   CCI   0 when the mean absolute deviation is 0
//   DI    0 when ATR is 0; DX 0 when +DI + -DI is 0
//   MFI   100 when NMF == 0 < PMF, 50 when both are 0
//   EOM   0 for a day with H == L or zero volume
namespace hsif::indicators {

struct IndicatorSeries {
    std::string name;
    OptionalSeries values;

    /// Index of the first defined value; values.size() when none.
    std::size_t first_defined() const;
};

// Close-only indicators.
IndicatorSeries sma(std::span<const double> close, int n);
IndicatorSeries ema(std::span<const double> close, int n);
IndicatorSeries roc(std::span<const double> close, int n);
IndicatorSeries mom(std::span<const double> close, int n);
/// Simple n-change averages of gains and losses (not Wilder smoothing).
IndicatorSeries rsi(std::span<const double> close, int n);
IndicatorSeries cmo(std::span<const double> close, int n);
IndicatorSeries ppo(std::span<const double> close, int n_fast, int n_slow);

struct Stochastic {
    IndicatorSeries k;
    IndicatorSeries d;
};
/// %D is the n_d-day simple mean of %K (no second percentage scaling).
Stochastic stochastic(const marketdata::CandleSeries& candles, int n_k, int n_d);

struct TrueRange {
    IndicatorSeries tr1;  // H_t - L_t
    IndicatorSeries tr2;  // H_t - C_{t-1}
    IndicatorSeries tr3;  // L_t - C_{t-1}
    IndicatorSeries tr;   // max(tr1, |tr2|, |tr3|)
    IndicatorSeries atr;  // n-day mean of TR
};
TrueRange true_range_atr(const marketdata::CandleSeries& candles, int n);

struct Directional {
    IndicatorSeries plus_di;
    IndicatorSeries minus_di;
    IndicatorSeries dx;
    IndicatorSeries adx;
};
/// +DM/-DM are the unconditional one-sided moves; ADX is seeded with the mean
/// of the first n DX values and then follows (ADX_{t-1}(n-1) + DX_t) / n.
Directional directional_system(const marketdata::CandleSeries& candles, int n);

struct ConditionalDm {
    IndicatorSeries mdi;
    IndicatorSeries pdi;
};
/// Directional indicators built from the conditional moves: a day's down-move
/// counts only when it exceeds the up-move (and vice versa).
ConditionalDm conditional_dm(const marketdata::CandleSeries& candles, int n);

struct Aroon {
    IndicatorSeries up;
    IndicatorSeries down;
};
/// Periods since the extreme over the trailing n+1 bars; ties go to the most recent bar.
Aroon aroon(const marketdata::CandleSeries& candles, int n);

IndicatorSeries bop(const marketdata::CandleSeries& candles);
IndicatorSeries mfi(const marketdata::CandleSeries& candles, int n);

struct Macd {
    IndicatorSeries macd;
    IndicatorSeries signal;
    IndicatorSeries histogram;
};
Macd macd(std::span<const double> close, int n_fast, int n_slow, int n_signal);

IndicatorSeries cci(const marketdata::CandleSeries& candles, int n);

struct Bollinger {
    IndicatorSeries lower;
    IndicatorSeries middle;
    IndicatorSeries upper;
};
/// Population standard deviation.
Bollinger bollinger(std::span<const double> close, int n, double k);

IndicatorSeries force_index(const marketdata::CandleSeries& candles, int n);

/// Volume scale used by the box ratio.
inline constexpr double kEomScale = 1e-10;
IndicatorSeries eom(const marketdata::CandleSeries& candles, int n);

}  // namespace hsif::indicators
