#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "hsif/csv.hpp"
#include "hsif/errors.hpp"
#include "hsif/sentiment.hpp"

using namespace hsif;
using namespace hsif::sentiment;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Date day(const char* s) { return *Date::parse(s); }

}  // namespace

TEST(CleanTweet, Examples) {
    EXPECT_EQ(clean_tweet("@elonmusk says https://t.co/x BTC up"), "@user says http BTC up");
    EXPECT_EQ(clean_tweet("email me at a@b.com http"), "email me at @user http");
    EXPECT_EQ(clean_tweet("plain   text\there"), "plain text here");
    EXPECT_EQ(clean_tweet(""), "");
    EXPECT_EQ(clean_tweet("HTTPS://upper.case"), "HTTPS://upper.case");
}

TEST(CleanTweet, SharedFixture) {
    const auto records = csv::read(read_file(std::string(HSIF_SOURCE_DIR) + "/tests/fixtures/clean_cases.csv"));
    ASSERT_EQ(records.size(), 51u);
    for (std::size_t i = 1; i < records.size(); ++i) {
        EXPECT_EQ(clean_tweet(records[i].fields[0]), records[i].fields[1]) << "line " << records[i].line;
    }
}

TEST(CleanTweet, Idempotent) {
    std::mt19937 rng(5);
    const std::vector<std::string> pieces{"@", "http", "a", "b@", "x", " ", "  ", "\t", "\n", "\xC2\xA0",
                                          "\xE3\x80\x80", "https://", ".", "\xE2\x80\x8B", "@user"};
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        const int n = static_cast<int>(rng() % 12);
        for (int k = 0; k < n; ++k) s += pieces[rng() % pieces.size()];
        const auto once = clean_tweet(s);
        EXPECT_EQ(clean_tweet(once), once) << s;
    }
}

TEST(IngestScores, Examples) {
    const auto one = ingest_scores("date,p_pos,p_neu,p_neg\n2021-01-01,0.6,0.3,0.1\n");
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].date, day("2021-01-01"));
    EXPECT_DOUBLE_EQ(one[0].p_pos, 0.6);
    EXPECT_TRUE(ingest_scores("date,p_pos,p_neu,p_neg\n").empty());

    try {
        ingest_scores("date,p_pos,p_neu,p_neg\n2021-01-01,0.6,0.6,0.3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(std::string(e.what()), "probabilities do not sum to 1 at line 2");
    }
    EXPECT_THROW(ingest_scores("date,p_pos,p_neu,p_neg\n2021-01-01,1.2,-0.1,-0.1\n"), ParseError);
    EXPECT_THROW(ingest_scores("date,p_pos,p_neu,p_neg\n2021-13-01,0.6,0.3,0.1\n"), ParseError);
    EXPECT_THROW(ingest_scores("date,pos,neu,neg\n"), ParseError);
}

TEST(AggregateDaily, Examples) {
    const std::vector<ScoredTweet> two{{day("2021-01-01"), 0.6, 0.3, 0.1}, {day("2021-01-01"), 0.2, 0.5, 0.3}};
    const auto agg = aggregate_daily(two, day("2021-01-01"), day("2021-01-03"));
    ASSERT_EQ(agg.size(), 3u);
    EXPECT_NEAR(agg[0].pos, 0.4, 1e-15);
    EXPECT_NEAR(agg[0].neu, 0.4, 1e-15);
    EXPECT_NEAR(agg[0].neg, 0.2, 1e-15);
    EXPECT_EQ(agg[1], (DailySentiment{day("2021-01-02"), 0.0, 1.0, 0.0}));

    const auto single = aggregate_daily({{day("2021-01-01"), 0.7, 0.2, 0.1}}, day("2021-01-01"), day("2021-01-01"));
    EXPECT_EQ(single[0], (DailySentiment{day("2021-01-01"), 0.7, 0.2, 0.1}));

    EXPECT_THROW(aggregate_daily(two, day("2021-01-02"), day("2021-01-03")), InvalidArgument);
}

TEST(AggregateDaily, Properties) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Date first = day("2020-06-01");
        const int span = 1 + static_cast<int>(rng() % 20);
        std::vector<ScoredTweet> tweets;
        const int count = static_cast<int>(rng() % 60);
        for (int i = 0; i < count; ++i) {
            double a = u(rng), b = u(rng), c = u(rng);
            const double s = a + b + c;
            tweets.push_back({first + static_cast<int>(rng() % span), a / s, b / s, c / s});
        }
        const auto agg = aggregate_daily(tweets, first, first + (span - 1));
        ASSERT_EQ(agg.size(), static_cast<std::size_t>(span));
        for (const auto& d : agg) {
            for (double v : {d.pos, d.neu, d.neg}) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
            }
            EXPECT_NEAR(d.pos + d.neu + d.neg, 1.0, 1e-6);
        }
        auto shuffled = tweets;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(aggregate_daily(shuffled, first, first + (span - 1)), agg);
    }
}

TEST(TweetsCsv, RoundTripWithQuoting) {
    const std::vector<TweetRecord> tweets{{day("2021-01-01"), "hello, \"world\"\nnext line"},
                                          {day("2021-01-02"), "plain"}};
    const auto back = parse_tweets(serialize_tweets(tweets));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].text, tweets[0].text);
    EXPECT_THROW(parse_tweets("date,text\n2021-01-01,   \n"), ParseError);
}

TEST(DailyCsv, RoundTrip) {
    const std::vector<DailySentiment> days{{day("2021-01-01"), 0.1, 0.7, 0.2}, {day("2021-01-02"), 0, 1, 0}};
    EXPECT_EQ(parse_daily(serialize_daily(days)), days);
}
