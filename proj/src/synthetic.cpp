#include "hsif/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace hsif::synthetic {

marketdata::CandleSeries random_walk(std::size_t days, std::uint64_t seed, Date start, double start_price) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<marketdata::Candle> candles;
    candles.reserve(days);
    double prev_close = start_price;
    for (std::size_t i = 0; i < days; ++i) {
        const double open = prev_close * std::exp(0.002 * normal(rng));
        const double close = open * std::exp(0.03 * normal(rng));
        const double high = std::max(open, close) * (1.0 + 0.01 * std::abs(normal(rng)));
        const double low = std::min(open, close) * (1.0 - 0.01 * std::min(std::abs(normal(rng)), 50.0));
        const double volume = 1e4 * std::exp(0.5 * normal(rng));
        candles.push_back({start + static_cast<std::int32_t>(i), open, high, low, close, volume});
        prev_close = close;
    }
    return marketdata::CandleSeries(std::move(candles));
}

TweetCorpus tweet_corpus(const marketdata::CandleSeries& series, std::uint64_t seed) {
    static const char* const kOpeners[] = {"BTC", "Bitcoin", "#crypto", "Market update:", "Heads up"};
    static const char* const kBullish[] = {"breaking out", "looks strong", "buyers stepping in", "rallying"};
    static const char* const kBearish[] = {"dumping hard", "looks weak", "sellers in control", "sliding"};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    TweetCorpus out;
    const auto& candles = series.candles();
    for (std::size_t i = 0; i < candles.size(); ++i) {
        const double move = i + 1 < candles.size() ? std::log(candles[i + 1].close / candles[i].close) : 0.0;
        const double tilt = std::tanh(40.0 * move);
        const auto count = rng() % 4;
        for (std::uint64_t k = 0; k < count; ++k) {
            const double lp = tilt + 0.8 * normal(rng), ln = -tilt + 0.8 * normal(rng), lz = 0.3 * normal(rng);
            const double ep = std::exp(lp), en = std::exp(ln), ez = std::exp(lz);
            const double pos = ep / (ep + en + ez), neg = en / (ep + en + ez);
            const double neu = 1.0 - pos - neg;

            std::string text = kOpeners[rng() % 5];
            text += rng() % 3 == 0 ? "  " : " ";
            text += pos > neg ? kBullish[rng() % 4] : kBearish[rng() % 4];
            if (rng() % 2) text += " @whale" + std::to_string(rng() % 100);
            if (rng() % 2) text += " https://t.co/" + std::to_string(rng() % 100000);
            if (rng() % 5 == 0) text += ", \"quoted\" take";
            out.tweets.push_back({candles[i].date, std::move(text)});
            out.scored.push_back({candles[i].date, pos, neu, neg});
        }
    }
    return out;
}

}  // namespace hsif::synthetic
