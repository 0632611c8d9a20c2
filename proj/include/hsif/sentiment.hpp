#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hsif/date.hpp"

namespace hsif::sentiment {

struct TweetRecord {
    Date date;
    std::string text;
};

/// Per-tweet class probabilities from the external scorer.
struct ScoredTweet {
    Date date;
    double p_pos = 0.0;
    double p_neu = 0.0;
    double p_neg = 0.0;
};

/// Mean of one day's scored tweets.
struct DailySentiment {
    Date date;
    double pos = 0.0;
    double neu = 1.0;
    double neg = 0.0;

    bool operator==(const DailySentiment&) const = default;
};

inline constexpr double kProbabilityTolerance = 1e-6;

/// Whitespace-delimited tokens containing '@' become "@user"; tokens containing
/// "http" become "http". Tokens are re-joined with single spaces. Idempotent.
std::string clean_tweet(std::string_view text);

/// `date,text` CSV (RFC-4180 quoting). Rows whose text is blank after trimming are rejected.
std::vector<TweetRecord> parse_tweets(std::string_view csv_text);
std::string serialize_tweets(const std::vector<TweetRecord>& tweets);

/// `date,p_pos,p_neu,p_neg` CSV. Throws ParseError on a malformed date, a
/// probability outside [0,1], or a triple whose sum differs from 1 by more than 1e-6.
std::vector<ScoredTweet> ingest_scores(std::string_view csv_text);

/// One entry per calendar day in [first, last]: component-wise mean of that
/// day's tweets, or the neutral triple (0, 1, 0) for a day without tweets.
/// Throws InvalidArgument if a tweet falls outside the span.
std::vector<DailySentiment> aggregate_daily(const std::vector<ScoredTweet>& scored, Date first, Date last);

std::string serialize_daily(const std::vector<DailySentiment>& days);
std::vector<DailySentiment> parse_daily(std::string_view csv_text);

}  // namespace hsif::sentiment
