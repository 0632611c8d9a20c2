#include "hsif/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hsif/errors.hpp"

namespace hsif::indicators {

std::size_t IndicatorSeries::first_defined() const {
    auto it = std::find_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
    return static_cast<std::size_t>(it - values.begin());
}

namespace {

using marketdata::CandleSeries;

void check_window(int n, std::size_t length, const char* what) {
    if (n <= 0 || static_cast<std::size_t>(n) > length) {
        throw InvalidArgument(std::string(what) + ": window " + std::to_string(n) +
                              " outside [1, " + std::to_string(length) + "]");
    }
}

std::string suffixed(const std::string& base, std::initializer_list<int> params) {
    std::string out = base;
    for (int p : params) out += "_" + std::to_string(p);
    return out;
}

/// Mean of values[end-n+1 .. end]; every value in the window must be defined.
double window_mean(const OptionalSeries& values, std::size_t end, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = end + 1 - n; i <= end; ++i) sum += *values[i];
    return sum / static_cast<double>(n);
}

/// n-day simple mean of a series with a defined suffix starting at `start`.
OptionalSeries trailing_mean(const OptionalSeries& values, std::size_t start, std::size_t n) {
    OptionalSeries out(values.size());
    for (std::size_t t = start + n - 1; t < values.size(); ++t) out[t] = window_mean(values, t, n);
    return out;
}

/// EMA seeded with the simple mean of the first n defined values.
OptionalSeries ema_series(const OptionalSeries& values, std::size_t start, std::size_t n) {
    OptionalSeries out(values.size());
    const std::size_t seed_at = start + n - 1;
    if (seed_at >= values.size()) return out;
    const double alpha = 2.0 / (static_cast<double>(n) + 1.0);
    double prev = window_mean(values, seed_at, n);
    out[seed_at] = prev;
    for (std::size_t t = seed_at + 1; t < values.size(); ++t) {
        prev = alpha * *values[t] + (1.0 - alpha) * prev;
        out[t] = prev;
    }
    return out;
}

OptionalSeries defined(std::span<const double> xs) {
    return OptionalSeries(xs.begin(), xs.end());
}

/// Index of the extreme of xs[t-n .. t]; ties resolve to the most recent bar.
template <typename Better>
std::size_t extreme_index(const std::vector<double>& xs, std::size_t t, std::size_t n, Better better) {
    std::size_t best = t - n;
    for (std::size_t i = t - n + 1; i <= t; ++i) {
        if (!better(xs[best], xs[i])) best = i;
    }
    return best;
}

OptionalSeries true_range_values(const CandleSeries& c) {
    OptionalSeries tr(c.size());
    for (std::size_t t = 1; t < c.size(); ++t) {
        const double prev_close = c[t - 1].close;
        tr[t] = std::max({c[t].high - c[t].low, std::abs(c[t].high - prev_close),
                          std::abs(c[t].low - prev_close)});
    }
    return tr;
}

double percent_ratio(double num, double den) { return den == 0.0 ? 0.0 : 100.0 * num / den; }

/// 100 - 100 / (1 + up/down) with the 100 / 50 conventions for a zero denominator.
double strength_index(double up, double down) {
    if (down == 0.0) return up == 0.0 ? 50.0 : 100.0;
    return 100.0 - 100.0 / (1.0 + up / down);
}

}  // namespace

IndicatorSeries sma(std::span<const double> close, int n) {
    check_window(n, close.size(), "MA");
    return {suffixed("MA", {n}), trailing_mean(defined(close), 0, static_cast<std::size_t>(n))};
}

IndicatorSeries ema(std::span<const double> close, int n) {
    check_window(n, close.size(), "EMA");
    return {suffixed("EMA", {n}), ema_series(defined(close), 0, static_cast<std::size_t>(n))};
}

IndicatorSeries roc(std::span<const double> close, int n) {
    check_window(n, close.size(), "ROC");
    IndicatorSeries out{suffixed("ROC", {n}), OptionalSeries(close.size())};
    for (std::size_t t = static_cast<std::size_t>(n) - 1; t < close.size(); ++t) {
        const double ref = close[t - static_cast<std::size_t>(n) + 1];
        if (ref == 0.0) throw InvalidArgument("ROC: zero reference price");
        out.values[t] = (close[t] - ref) / ref * 100.0;
    }
    return out;
}

IndicatorSeries mom(std::span<const double> close, int n) {
    check_window(n, close.size(), "MOM");
    IndicatorSeries out{suffixed("MOM", {n}), OptionalSeries(close.size())};
    for (std::size_t t = static_cast<std::size_t>(n) - 1; t < close.size(); ++t) {
        out.values[t] = close[t] - close[t - static_cast<std::size_t>(n) + 1];
    }
    return out;
}

IndicatorSeries rsi(std::span<const double> close, int n) {
    check_window(n, close.size(), "RSI");
    const auto w = static_cast<std::size_t>(n);
    IndicatorSeries out{suffixed("RSI", {n}), OptionalSeries(close.size())};
    for (std::size_t t = w; t < close.size(); ++t) {
        double gain = 0.0, loss = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) {
            const double d = close[i] - close[i - 1];
            if (d > 0) gain += d;
            else loss -= d;
        }
        out.values[t] = strength_index(gain / static_cast<double>(w), loss / static_cast<double>(w));
    }
    return out;
}

IndicatorSeries cmo(std::span<const double> close, int n) {
    check_window(n, close.size(), "CMO");
    const auto w = static_cast<std::size_t>(n);
    IndicatorSeries out{suffixed("CMO", {n}), OptionalSeries(close.size())};
    for (std::size_t t = w; t < close.size(); ++t) {
        double su = 0.0, sd = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) {
            const double d = close[i] - close[i - 1];
            if (d > 0) su += d;
            else sd -= d;
        }
        out.values[t] = percent_ratio(su - sd, su + sd);
    }
    return out;
}

IndicatorSeries ppo(std::span<const double> close, int n_fast, int n_slow) {
    check_window(n_fast, close.size(), "PPO");
    check_window(n_slow, close.size(), "PPO");
    const auto fast = ema_series(defined(close), 0, static_cast<std::size_t>(n_fast));
    const auto slow = ema_series(defined(close), 0, static_cast<std::size_t>(n_slow));
    IndicatorSeries out{suffixed("PPO", {n_fast, n_slow}), OptionalSeries(close.size())};
    for (std::size_t t = 0; t < close.size(); ++t) {
        if (!fast[t] || !slow[t]) continue;
        if (*slow[t] == 0.0) throw InvalidArgument("PPO: zero slow EMA");
        out.values[t] = (*fast[t] - *slow[t]) / *slow[t] * 100.0;
    }
    return out;
}

Stochastic stochastic(const CandleSeries& c, int n_k, int n_d) {
    check_window(n_k, c.size(), "STOK");
    check_window(n_d, c.size(), "STOD");
    const auto wk = static_cast<std::size_t>(n_k);
    Stochastic out{{suffixed("STOK", {n_k}), OptionalSeries(c.size())},
                   {suffixed("STOD", {n_k, n_d}), {}}};
    for (std::size_t t = wk - 1; t < c.size(); ++t) {
        double lo = c[t].low, hi = c[t].high;
        for (std::size_t i = t + 1 - wk; i < t; ++i) {
            lo = std::min(lo, c[i].low);
            hi = std::max(hi, c[i].high);
        }
        out.k.values[t] = hi == lo ? 50.0 : 100.0 * (c[t].close - lo) / (hi - lo);
    }
    out.d.values = trailing_mean(out.k.values, wk - 1, static_cast<std::size_t>(n_d));
    return out;
}

TrueRange true_range_atr(const CandleSeries& c, int n) {
    check_window(n, c.size(), "ATR");
    TrueRange out{{"tr1", OptionalSeries(c.size())},
                  {"tr2", OptionalSeries(c.size())},
                  {"tr3", OptionalSeries(c.size())},
                  {"TR", true_range_values(c)},
                  {suffixed("ATR", {n}), {}}};
    for (std::size_t t = 0; t < c.size(); ++t) {
        out.tr1.values[t] = c[t].high - c[t].low;
        if (t == 0) continue;
        out.tr2.values[t] = c[t].high - c[t - 1].close;
        out.tr3.values[t] = c[t].low - c[t - 1].close;
    }
    out.atr.values = trailing_mean(out.tr.values, 1, static_cast<std::size_t>(n));
    return out;
}

Directional directional_system(const CandleSeries& c, int n) {
    check_window(n, c.size(), "ADX");
    const auto w = static_cast<std::size_t>(n);
    OptionalSeries plus_dm(c.size()), minus_dm(c.size());
    for (std::size_t t = 1; t < c.size(); ++t) {
        plus_dm[t] = std::max(0.0, c[t].high - c[t - 1].high);
        minus_dm[t] = std::max(0.0, c[t - 1].low - c[t].low);
    }
    const auto plus_avg = trailing_mean(plus_dm, 1, w);
    const auto minus_avg = trailing_mean(minus_dm, 1, w);
    const auto atr = trailing_mean(true_range_values(c), 1, w);

    Directional out{{suffixed("+DI", {n}), OptionalSeries(c.size())},
                    {suffixed("-DI", {n}), OptionalSeries(c.size())},
                    {suffixed("DX", {n}), OptionalSeries(c.size())},
                    {suffixed("ADX", {n}), OptionalSeries(c.size())}};
    for (std::size_t t = w; t < c.size(); ++t) {
        const double pdi = percent_ratio(*plus_avg[t], *atr[t]);
        const double mdi = percent_ratio(*minus_avg[t], *atr[t]);
        out.plus_di.values[t] = pdi;
        out.minus_di.values[t] = mdi;
        out.dx.values[t] = percent_ratio(std::abs(pdi - mdi), pdi + mdi);
    }
    const std::size_t seed_at = 2 * w - 1;
    if (seed_at < c.size()) {
        double adx = window_mean(out.dx.values, seed_at, w);
        out.adx.values[seed_at] = adx;
        for (std::size_t t = seed_at + 1; t < c.size(); ++t) {
            adx = (adx * static_cast<double>(w - 1) + *out.dx.values[t]) / static_cast<double>(w);
            out.adx.values[t] = adx;
        }
    }
    return out;
}

ConditionalDm conditional_dm(const CandleSeries& c, int n) {
    check_window(n, c.size(), "MDI/PDI");
    const auto w = static_cast<std::size_t>(n);
    OptionalSeries mdm(c.size()), pdm(c.size());
    for (std::size_t t = 1; t < c.size(); ++t) {
        const double down = c[t - 1].low - c[t].low;
        const double up = c[t].high - c[t - 1].high;
        mdm[t] = (down > up && down > 0) ? down : 0.0;
        pdm[t] = (up > down && up > 0) ? up : 0.0;
    }
    const auto mdm_avg = trailing_mean(mdm, 1, w);
    const auto pdm_avg = trailing_mean(pdm, 1, w);
    const auto atr = trailing_mean(true_range_values(c), 1, w);
    ConditionalDm out{{suffixed("MDI", {n}), OptionalSeries(c.size())},
                      {suffixed("PDI", {n}), OptionalSeries(c.size())}};
    for (std::size_t t = w; t < c.size(); ++t) {
        out.mdi.values[t] = percent_ratio(*mdm_avg[t], *atr[t]);
        out.pdi.values[t] = percent_ratio(*pdm_avg[t], *atr[t]);
    }
    return out;
}

Aroon aroon(const CandleSeries& c, int n) {
    check_window(n, c.size(), "Aroon");
    const auto w = static_cast<std::size_t>(n);
    const auto highs = c.highs();
    const auto lows = c.lows();
    Aroon out{{suffixed("AroonUp", {n}), OptionalSeries(c.size())},
              {suffixed("AroonDown", {n}), OptionalSeries(c.size())}};
    for (std::size_t t = w; t < c.size(); ++t) {
        const auto hi = extreme_index(highs, t, w, [](double best, double x) { return best > x; });
        const auto lo = extreme_index(lows, t, w, [](double best, double x) { return best < x; });
        out.up.values[t] = 100.0 * static_cast<double>(w - (t - hi)) / static_cast<double>(w);
        out.down.values[t] = 100.0 * static_cast<double>(w - (t - lo)) / static_cast<double>(w);
    }
    return out;
}

IndicatorSeries bop(const CandleSeries& c) {
    IndicatorSeries out{"BOP", OptionalSeries(c.size())};
    for (std::size_t t = 0; t < c.size(); ++t) {
        const double range = c[t].high - c[t].low;
        out.values[t] = range == 0.0 ? 0.0 : (c[t].close - c[t].open) / range;
    }
    return out;
}

IndicatorSeries mfi(const CandleSeries& c, int n) {
    check_window(n, c.size(), "MFI");
    const auto w = static_cast<std::size_t>(n);
    std::vector<double> tp(c.size());
    for (std::size_t t = 0; t < c.size(); ++t) tp[t] = (c[t].high + c[t].low + c[t].close) / 3.0;
    IndicatorSeries out{suffixed("MFI", {n}), OptionalSeries(c.size())};
    for (std::size_t t = w; t < c.size(); ++t) {
        double pmf = 0.0, nmf = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) {
            const double raw = tp[i] * c[i].volume;
            if (tp[i] > tp[i - 1]) pmf += raw;
            else if (tp[i] < tp[i - 1]) nmf += raw;
        }
        out.values[t] = strength_index(pmf, nmf);
    }
    return out;
}

Macd macd(std::span<const double> close, int n_fast, int n_slow, int n_signal) {
    check_window(n_fast, close.size(), "MACD");
    check_window(n_slow, close.size(), "MACD");
    check_window(n_signal, close.size(), "MACD signal");
    const auto fast = ema_series(defined(close), 0, static_cast<std::size_t>(n_fast));
    const auto slow = ema_series(defined(close), 0, static_cast<std::size_t>(n_slow));
    Macd out{{suffixed("MACD", {n_fast, n_slow}), OptionalSeries(close.size())},
             {suffixed("MACD_Signal", {n_fast, n_slow, n_signal}), {}},
             {suffixed("MACD_Hist", {n_fast, n_slow, n_signal}), OptionalSeries(close.size())}};
    const auto start = static_cast<std::size_t>(std::max(n_fast, n_slow) - 1);
    for (std::size_t t = start; t < close.size(); ++t) out.macd.values[t] = *fast[t] - *slow[t];
    out.signal.values = ema_series(out.macd.values, start, static_cast<std::size_t>(n_signal));
    for (std::size_t t = 0; t < close.size(); ++t) {
        if (out.signal.values[t]) out.histogram.values[t] = *out.macd.values[t] - *out.signal.values[t];
    }
    return out;
}

IndicatorSeries cci(const CandleSeries& c, int n) {
    check_window(n, c.size(), "CCI");
    const auto w = static_cast<std::size_t>(n);
    std::vector<double> tp(c.size());
    for (std::size_t t = 0; t < c.size(); ++t) tp[t] = (c[t].high + c[t].low + c[t].close) / 3.0;
    IndicatorSeries out{suffixed("CCI", {n}), OptionalSeries(c.size())};
    for (std::size_t t = w - 1; t < c.size(); ++t) {
        // A flat window has zero mean deviation; summing would leave rounding noise.
        if (std::all_of(tp.begin() + static_cast<std::ptrdiff_t>(t + 1 - w), tp.begin() + static_cast<std::ptrdiff_t>(t + 1),
                        [&](double x) { return x == tp[t]; })) {
            out.values[t] = 0.0;
            continue;
        }
        double mean = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) mean += tp[i];
        mean /= static_cast<double>(w);
        double dev = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) dev += std::abs(tp[i] - mean);
        dev /= static_cast<double>(w);
        out.values[t] = dev == 0.0 ? 0.0 : (tp[t] - mean) / (0.015 * dev);
    }
    return out;
}

Bollinger bollinger(std::span<const double> close, int n, double k) {
    check_window(n, close.size(), "Bollinger");
    if (!(k > 0.0)) throw InvalidArgument("Bollinger: width multiplier must be positive");
    const auto w = static_cast<std::size_t>(n);
    const int k_label = static_cast<int>(std::lround(k));
    Bollinger out{{suffixed("BB_LB", {n, k_label}), OptionalSeries(close.size())},
                  {suffixed("BB_MB", {n, k_label}), OptionalSeries(close.size())},
                  {suffixed("BB_UB", {n, k_label}), OptionalSeries(close.size())}};
    for (std::size_t t = w - 1; t < close.size(); ++t) {
        if (std::all_of(close.begin() + static_cast<std::ptrdiff_t>(t + 1 - w),
                        close.begin() + static_cast<std::ptrdiff_t>(t + 1), [&](double x) { return x == close[t]; })) {
            out.lower.values[t] = out.middle.values[t] = out.upper.values[t] = close[t];
            continue;
        }
        double mean = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) mean += close[i];
        mean /= static_cast<double>(w);
        double var = 0.0;
        for (std::size_t i = t + 1 - w; i <= t; ++i) var += (close[i] - mean) * (close[i] - mean);
        const double sd = std::sqrt(var / static_cast<double>(w));
        out.lower.values[t] = mean - k * sd;
        out.middle.values[t] = mean;
        out.upper.values[t] = mean + k * sd;
    }
    return out;
}

IndicatorSeries force_index(const CandleSeries& c, int n) {
    check_window(n, c.size(), "FI");
    OptionalSeries raw(c.size());
    for (std::size_t t = 1; t < c.size(); ++t) raw[t] = (c[t].close - c[t - 1].close) * c[t].volume;
    return {suffixed("FI", {n}), trailing_mean(raw, 1, static_cast<std::size_t>(n))};
}

IndicatorSeries eom(const CandleSeries& c, int n) {
    check_window(n, c.size(), "EOM");
    OptionalSeries emv(c.size());
    for (std::size_t t = 1; t < c.size(); ++t) {
        const double hld = c[t].high - c[t].low;
        if (hld == 0.0) {
            emv[t] = 0.0;
            continue;
        }
        const double box_ratio = (c[t].volume / kEomScale) / hld;
        if (box_ratio == 0.0) {
            emv[t] = 0.0;
            continue;
        }
        const double hla = (c[t].high + c[t].low) / 2.0;
        const double hla_prev = (c[t - 1].high + c[t - 1].low) / 2.0;
        emv[t] = ((hla - hla_prev) / hld) / box_ratio;
    }
    return {suffixed("EOM", {n}), trailing_mean(emv, 1, static_cast<std::size_t>(n))};
}

}  // namespace hsif::indicators
