#pragma once

#include <cstddef>
#include <cstdint>

#include "hsif/date.hpp"
#include "hsif/marketdata.hpp"
#include "hsif/sentiment.hpp"

namespace hsif::synthetic {

/// Geometric random walk of daily candles starting at `start`, one candle per
/// calendar day. Deterministic for a given seed.
marketdata::CandleSeries random_walk(std::size_t days, std::uint64_t seed,
                                     Date start = Date::from_ymd(2015, 4, 6),
                                     double start_price = 250.0);

struct TweetCorpus {
    std::vector<sentiment::TweetRecord> tweets;
    std::vector<sentiment::ScoredTweet> scored;  // one row per tweet, same order
};

/// Zero to three templated tweets per day (mentions, links, irregular spacing)
/// with class probabilities tilted towards the next day's price move.
TweetCorpus tweet_corpus(const marketdata::CandleSeries& series, std::uint64_t seed);

}  // namespace hsif::synthetic
