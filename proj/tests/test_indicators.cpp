#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "hsif/catalog.hpp"
#include "hsif/errors.hpp"
#include "hsif/indicators.hpp"
#include "hsif/synthetic.hpp"
#include "support/indicator_check.hpp"

using namespace hsif;
using namespace hsif::indicators;
using marketdata::Candle;
using marketdata::CandleSeries;
using testsupport::compare_series;
using testsupport::to_bars;

namespace {

CandleSeries bars(const std::vector<double>& o, const std::vector<double>& h, const std::vector<double>& l,
                  const std::vector<double>& c, const std::vector<double>& v) {
    std::vector<Candle> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.push_back({Date::from_ymd(2020, 1, 1) + static_cast<int>(i), o[i], h[i], l[i], c[i], v[i]});
    }
    return CandleSeries(out);
}

CandleSeries constant(std::size_t n, double price = 100.0, double volume = 10.0) {
    std::vector<double> p(n, price), v(n, volume);
    return bars(p, p, p, p, v);
}

/// Highs and lows rise by `step` every day; close sits mid-bar.
CandleSeries trending(std::size_t n, double step) {
    std::vector<double> o, h, l, c, v;
    for (std::size_t i = 0; i < n; ++i) {
        const double mid = 100.0 + step * static_cast<double>(i);
        o.push_back(mid);
        h.push_back(mid + 1);
        l.push_back(mid - 1);
        c.push_back(mid);
        v.push_back(5.0);
    }
    return bars(o, h, l, c, v);
}

std::vector<double> defined_values(const IndicatorSeries& s) {
    std::vector<double> out;
    for (const auto& v : s.values)
        if (v) out.push_back(*v);
    return out;
}

void expect_all(const IndicatorSeries& s, double value, const char* label) {
    const auto vals = defined_values(s);
    EXPECT_FALSE(vals.empty()) << label;
    for (double v : vals) EXPECT_DOUBLE_EQ(v, value) << label;
}

}  // namespace

TEST(Sma, Examples) {
    const std::vector<double> c{1, 2, 3, 4};
    const auto s = sma(c, 2);
    EXPECT_EQ(s.name, "MA_2");
    EXPECT_FALSE(s.values[0]);
    EXPECT_DOUBLE_EQ(*s.values[1], 1.5);
    EXPECT_DOUBLE_EQ(*s.values[2], 2.5);
    EXPECT_DOUBLE_EQ(*s.values[3], 3.5);
    const auto full = sma(c, 4);
    EXPECT_EQ(full.first_defined(), 3u);
    EXPECT_DOUBLE_EQ(*full.values[3], 2.5);
    expect_all(sma(std::vector<double>(7, 3.25), 3), 3.25, "constant");
}

TEST(Indicators, WindowErrors) {
    const std::vector<double> c{1, 2, 3};
    EXPECT_THROW(sma(c, 0), InvalidArgument);
    EXPECT_THROW(sma(c, 4), InvalidArgument);
    EXPECT_THROW(ema(c, -1), InvalidArgument);
    EXPECT_THROW(rsi(c, 5), InvalidArgument);
    EXPECT_THROW(macd(c, 2, 3, 4), InvalidArgument);
    EXPECT_THROW(aroon(constant(3), 4), InvalidArgument);
    EXPECT_THROW(bollinger(c, 2, 0.0), InvalidArgument);
}

TEST(Ema, SeededWithSma) {
    const auto a = ema(std::vector<double>{0, 10}, 2);
    EXPECT_FALSE(a.values[0]);
    EXPECT_DOUBLE_EQ(*a.values[1], 5.0);
    const auto b = ema(std::vector<double>{0, 10, 10}, 2);
    EXPECT_NEAR(*b.values[2], 2.0 / 3.0 * 10 + 1.0 / 3.0 * 5, 1e-12);
    expect_all(ema(std::vector<double>(9, 4.0), 4), 4.0, "constant");
}

TEST(RocMom, Examples) {
    EXPECT_DOUBLE_EQ(*roc(std::vector<double>{100, 110}, 2).values[1], 10.0);
    EXPECT_DOUBLE_EQ(*roc(std::vector<double>{100, 90}, 2).values[1], -10.0);
    EXPECT_DOUBLE_EQ(*mom(std::vector<double>{5, 9}, 2).values[1], 4.0);
    expect_all(mom(std::vector<double>{5, 9, 2, 8}, 1), 0.0, "n=1");
    expect_all(roc(std::vector<double>(5, 7.0), 3), 0.0, "constant");
    expect_all(mom(std::vector<double>(5, 7.0), 3), 0.0, "constant");
}

TEST(Rsi, Conventions) {
    std::vector<double> up, down;
    for (int i = 0; i < 30; ++i) {
        up.push_back(10 + i);
        down.push_back(100 - i);
    }
    expect_all(rsi(up, 14), 100.0, "increasing");
    expect_all(rsi(down, 14), 0.0, "decreasing");
    expect_all(rsi(std::vector<double>(20, 5.0), 14), 50.0, "flat");
    EXPECT_EQ(rsi(up, 14).first_defined(), 14u);
}

TEST(Rsi, MatchesOracleOnShortWalk) {
    const auto s = synthetic::random_walk(15, 7);
    const auto got = rsi(s.closes(), 14);
    EXPECT_EQ(got.first_defined(), 14u);
    EXPECT_EQ(compare_series(got.values, oracle::rsi(s.closes(), 14)), "");
}

TEST(Stochastic, Conventions) {
    // Close at the window high.
    const auto s = bars({1, 2, 3}, {2, 3, 4}, {0.5, 1.5, 2.5}, {1.5, 2.5, 4}, {1, 1, 1});
    EXPECT_DOUBLE_EQ(*stochastic(s, 3, 1).k.values[2], 100.0);
    const auto flat = stochastic(constant(10), 5, 3);
    expect_all(flat.k, 50.0, "%K flat");
    expect_all(flat.d, 50.0, "%D flat");
    const auto r = synthetic::random_walk(30, 11);
    const auto st = stochastic(r, 14, 3);
    EXPECT_EQ(st.d.name, "STOD_14_3");
    EXPECT_EQ(compare_series(st.k.values, oracle::stok(to_bars(r), 14)), "");
    EXPECT_EQ(compare_series(st.d.values, oracle::stod(to_bars(r), 14, 3)), "");
}

TEST(TrueRange, Examples) {
    const auto s = bars({9, 10}, {10, 12}, {8, 9}, {9, 11}, {1, 1});
    const auto t = true_range_atr(s, 1);
    EXPECT_DOUBLE_EQ(*t.tr1.values[1], 3.0);
    EXPECT_DOUBLE_EQ(*t.tr2.values[1], 3.0);
    EXPECT_DOUBLE_EQ(*t.tr3.values[1], 0.0);
    EXPECT_DOUBLE_EQ(*t.tr.values[1], 3.0);
    EXPECT_FALSE(t.tr.values[0]);
    const auto flat = true_range_atr(constant(20), 14);
    expect_all(flat.tr, 0.0, "TR");
    expect_all(flat.atr, 0.0, "ATR");
}

TEST(Directional, Conventions) {
    const auto flat = directional_system(constant(40), 14);
    for (const auto* s : {&flat.plus_di, &flat.minus_di, &flat.dx, &flat.adx}) expect_all(*s, 0.0, s->name.c_str());

    const auto up = directional_system(trending(40, 1.0), 14);
    expect_all(up.minus_di, 0.0, "-DI");
    expect_all(up.dx, 100.0, "DX");
    expect_all(up.adx, 100.0, "ADX");
    EXPECT_EQ(up.dx.first_defined(), 14u);
    EXPECT_EQ(up.adx.first_defined(), 27u);
}

TEST(ConditionalDm, GateAndConventions) {
    // Day 2: low drops 3, high rises 1.
    const auto s = bars({10, 10}, {12, 13}, {8, 5}, {10, 6}, {1, 1});
    const auto c = conditional_dm(s, 1);
    const double atr = 8.0;  // max(13-5, |13-10|, |5-10|)
    EXPECT_DOUBLE_EQ(*c.mdi.values[1], 3.0 / atr * 100);
    EXPECT_DOUBLE_EQ(*c.pdi.values[1], 0.0);
    const auto flat = conditional_dm(constant(30), 14);
    expect_all(flat.mdi, 0.0, "MDI");
    expect_all(flat.pdi, 0.0, "PDI");
}

TEST(Aroon, PeriodsSinceExtreme) {
    const auto up = aroon(trending(30, 1.0), 21);
    expect_all(up.up, 100.0, "new high today");
    expect_all(up.down, 0.0, "low 21 bars ago");
    // Ties resolve to the most recent bar.
    const auto flat = aroon(constant(30), 5);
    expect_all(flat.up, 100.0, "flat up");
    expect_all(flat.down, 100.0, "flat down");
    const auto r = synthetic::random_walk(200, 3);
    const auto a = aroon(r, 21);
    const auto [ou, od] = oracle::aroon(to_bars(r), 21);
    EXPECT_EQ(compare_series(a.up.values, ou, 0.0), "");
    EXPECT_EQ(compare_series(a.down.values, od, 0.0), "");
}

TEST(Bop, Examples) {
    EXPECT_DOUBLE_EQ(*bop(bars({10}, {13}, {9}, {12}, {1})).values[0], 0.5);
    EXPECT_DOUBLE_EQ(*bop(bars({10}, {13}, {9}, {10}, {1})).values[0], 0.0);
    EXPECT_DOUBLE_EQ(*bop(bars({10}, {10}, {10}, {10}, {1})).values[0], 0.0);
}

TEST(Ppo, Examples) {
    expect_all(ppo(std::vector<double>(40, 9.0), 12, 26), 0.0, "constant");
    const auto r = synthetic::random_walk(60, 5).closes();
    EXPECT_EQ(compare_series(ppo(r, 12, 26).values, oracle::ppo(r, 12, 26)), "");
}

TEST(Cmo, Conventions) {
    std::vector<double> up, down;
    for (int i = 0; i < 20; ++i) {
        up.push_back(1 + i);
        down.push_back(50 - i);
    }
    expect_all(cmo(up, 14), 100.0, "increasing");
    expect_all(cmo(down, 14), -100.0, "decreasing");
    expect_all(cmo(std::vector<double>(20, 2.0), 14), 0.0, "flat");
}

TEST(Mfi, Conventions) {
    expect_all(mfi(trending(30, 1.0), 14), 100.0, "rising TP");
    expect_all(mfi(trending(30, -1.0), 14), 0.0, "falling TP");
    expect_all(mfi(constant(30), 14), 50.0, "flat TP");
}

TEST(Macd, Structure) {
    const auto flat = macd(std::vector<double>(60, 3.0), 12, 26, 9);
    expect_all(flat.macd, 0.0, "macd");
    expect_all(flat.signal, 0.0, "signal");
    expect_all(flat.histogram, 0.0, "hist");
    const auto r = synthetic::random_walk(100, 8).closes();
    const auto m = macd(r, 12, 26, 9);
    EXPECT_EQ(m.macd.first_defined(), 25u);
    EXPECT_EQ(m.signal.first_defined(), 33u);
    for (std::size_t t = 0; t < r.size(); ++t) {
        if (m.histogram.values[t]) {
            EXPECT_EQ(*m.histogram.values[t], *m.macd.values[t] - *m.signal.values[t]);
        }
    }
}

TEST(Cci, Examples) {
    // Flat bars whose typical prices are 10, 10, 13.
    const auto s = bars({10, 10, 13}, {10, 10, 13}, {10, 10, 13}, {10, 10, 13}, {1, 1, 1});
    EXPECT_NEAR(*cci(s, 3).values[2], 100.0, 1e-9);
    expect_all(cci(constant(25), 20), 0.0, "constant");
    // Prices whose window mean does not round back to the price itself.
    for (double p : {0.01, 0.1, 0.3, 1234.5678}) expect_all(cci(constant(40, p), 14), 0.0, "constant small price");
}

TEST(Bollinger, Examples) {
    std::vector<double> c;
    for (int i = 1; i <= 20; ++i) c.push_back(i);
    const auto b = bollinger(c, 20, 2);
    EXPECT_DOUBLE_EQ(*b.middle.values[19], 10.5);
    EXPECT_NEAR(*b.upper.values[19], 10.5 + 2 * std::sqrt(33.25), 1e-12);
    EXPECT_NEAR(*b.lower.values[19], 10.5 - 2 * std::sqrt(33.25), 1e-12);
    EXPECT_NEAR(*b.upper.values[19], 22.0326, 1e-4);
    const auto flat = bollinger(std::vector<double>(25, 6.0), 20, 2);
    expect_all(flat.upper, 6.0, "UB");
    expect_all(flat.lower, 6.0, "LB");
    for (double p : {0.01, 0.1, 0.3}) {
        const auto f = bollinger(std::vector<double>(30, p), 14, 2);
        expect_all(f.lower, p, "LB");
        expect_all(f.middle, p, "MB");
        expect_all(f.upper, p, "UB");
    }
    const auto r = bollinger(synthetic::random_walk(80, 4).closes(), 20, 2);
    for (std::size_t t = 19; t < 80; ++t) {
        EXPECT_NEAR(*r.upper.values[t] - *r.middle.values[t], *r.middle.values[t] - *r.lower.values[t], 1e-9);
    }
}

TEST(ForceIndex, Examples) {
    const auto s = bars({10, 12}, {10, 12}, {10, 12}, {10, 12}, {1, 5});
    EXPECT_DOUBLE_EQ(*force_index(s, 1).values[1], 10.0);
    expect_all(force_index(constant(20), 13), 0.0, "constant");
}

TEST(Eom, Examples) {
    const auto s = bars({9, 11}, {10, 12}, {8, 10}, {9, 11}, {1, 2e-10});
    EXPECT_NEAR(*eom(s, 1).values[1], 1.0, 1e-12);
    expect_all(eom(constant(20), 14), 0.0, "constant");
    // Zero volume contributes zero instead of dividing by a zero box ratio.
    const auto z = bars({9, 11}, {10, 12}, {8, 10}, {9, 11}, {1, 0});
    EXPECT_DOUBLE_EQ(*eom(z, 1).values[1], 0.0);
}

// Every operation against its independent transliteration on a 1,000-point walk.
TEST(Indicators, OracleEquivalence) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto s = synthetic::random_walk(1000, seed);
        const auto b = to_bars(s);
        const auto c = s.closes();
        EXPECT_EQ(compare_series(sma(c, 20).values, oracle::ma(c, 20)), "");
        EXPECT_EQ(compare_series(ema(c, 26).values, oracle::ema(c, 26)), "");
        EXPECT_EQ(compare_series(roc(c, 10).values, oracle::roc(c, 10)), "");
        EXPECT_EQ(compare_series(mom(c, 30).values, oracle::mom(c, 30)), "");
        EXPECT_EQ(compare_series(rsi(c, 14).values, oracle::rsi(c, 14)), "");
        EXPECT_EQ(compare_series(cmo(c, 14).values, oracle::cmo(c, 14)), "");
        EXPECT_EQ(compare_series(ppo(c, 12, 26).values, oracle::ppo(c, 12, 26)), "");
        const auto st = stochastic(s, 14, 3);
        EXPECT_EQ(compare_series(st.k.values, oracle::stok(b, 14)), "");
        EXPECT_EQ(compare_series(st.d.values, oracle::stod(b, 14, 3)), "");
        const auto tr = true_range_atr(s, 14);
        EXPECT_EQ(compare_series(tr.tr1.values, oracle::tr1(b)), "");
        EXPECT_EQ(compare_series(tr.tr2.values, oracle::tr2(b)), "");
        EXPECT_EQ(compare_series(tr.tr3.values, oracle::tr3(b)), "");
        EXPECT_EQ(compare_series(tr.tr.values, oracle::tr(b)), "");
        EXPECT_EQ(compare_series(tr.atr.values, oracle::atr(b, 14)), "");
        const auto d = directional_system(s, 14);
        const auto od = oracle::dmi(b, 14);
        EXPECT_EQ(compare_series(d.plus_di.values, od.plus_di), "");
        EXPECT_EQ(compare_series(d.minus_di.values, od.minus_di), "");
        EXPECT_EQ(compare_series(d.dx.values, od.dx), "");
        EXPECT_EQ(compare_series(d.adx.values, od.adx), "");
        const auto cd = conditional_dm(s, 14);
        const auto [mdi, pdi] = oracle::mdi_pdi(b, 14);
        EXPECT_EQ(compare_series(cd.mdi.values, mdi), "");
        EXPECT_EQ(compare_series(cd.pdi.values, pdi), "");
        const auto ar = aroon(s, 21);
        const auto [up, down] = oracle::aroon(b, 21);
        EXPECT_EQ(compare_series(ar.up.values, up), "");
        EXPECT_EQ(compare_series(ar.down.values, down), "");
        EXPECT_EQ(compare_series(bop(s).values, oracle::bop(b)), "");
        EXPECT_EQ(compare_series(mfi(s, 14).values, oracle::mfi(b, 14)), "");
        const auto m = macd(c, 12, 26, 9);
        const auto om = oracle::macd(c, 12, 26, 9);
        EXPECT_EQ(compare_series(m.macd.values, om.macd), "");
        EXPECT_EQ(compare_series(m.signal.values, om.signal), "");
        EXPECT_EQ(compare_series(m.histogram.values, om.hist), "");
        EXPECT_EQ(compare_series(cci(s, 20).values, oracle::cci(b, 20)), "");
        const auto bb = bollinger(c, 20, 2);
        const auto obb = oracle::bollinger(c, 20, 2);
        EXPECT_EQ(compare_series(bb.lower.values, obb.lb), "");
        EXPECT_EQ(compare_series(bb.middle.values, obb.mb), "");
        EXPECT_EQ(compare_series(bb.upper.values, obb.ub), "");
        EXPECT_EQ(compare_series(force_index(s, 13).values, oracle::force_index(b, 13)), "");
        // EOM values are ~1e-14; compare relatively with no absolute floor.
        EXPECT_EQ(compare_series(eom(s, 14).values, oracle::eom(b, 14), 1e-9, 0.0), "");
    }
}

TEST(Indicators, BoundedRanges) {
    const auto s = synthetic::random_walk(1000, 21);
    const auto c = s.closes();
    auto within = [](const IndicatorSeries& x, double lo, double hi) {
        for (const auto& v : x.values) {
            if (v) {
                EXPECT_GE(*v, lo) << x.name;
                EXPECT_LE(*v, hi) << x.name;
            }
        }
    };
    within(rsi(c, 14), 0, 100);
    const auto st = stochastic(s, 14, 3);
    within(st.k, 0, 100);
    within(st.d, 0, 100);
    within(mfi(s, 14), 0, 100);
    within(cmo(c, 14), -100, 100);
    const auto ar = aroon(s, 21);
    within(ar.up, 0, 100);
    within(ar.down, 0, 100);
    within(bop(s), -1, 1);
}

// Appending candles never changes values that were already defined.
TEST(Indicators, StreamingConsistency) {
    const auto full = synthetic::random_walk(400, 9);
    const auto part = full.prefix(300);
    const auto catalog = default_catalog();
    const auto a = compute_catalog(part, catalog);
    const auto b = compute_catalog(full, catalog);
    ASSERT_EQ(a.width(), b.width());
    for (std::size_t col = 0; col < a.width(); ++col) {
        for (std::size_t t = 0; t < a.rows(); ++t) {
            ASSERT_EQ(a.column(col).values[t], b.column(col).values[t]) << a.column(col).name << " @" << t;
        }
    }
}

TEST(Catalog, DefaultHas53ColumnsAndWarmup200) {
    const auto catalog = default_catalog();
    EXPECT_EQ(catalog.size(), 48u);
    const auto s = synthetic::random_walk(400, 12);
    const auto frame = compute_catalog(s, catalog);
    EXPECT_EQ(frame.width(), 53u);
    EXPECT_EQ(frame.first_fully_defined_row(), 200u);
    std::size_t longest = 0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const auto& e = catalog.entries()[i];
        const auto& col = frame.column(kRawColumns.size() + i);
        EXPECT_EQ(col.name, e.column_name());
        // Analytic warmup equals the observed first defined index.
        const auto first = static_cast<std::size_t>(
            std::find_if(col.values.begin(), col.values.end(), [](const auto& v) { return v.has_value(); }) -
            col.values.begin());
        EXPECT_EQ(first, e.warmup()) << e.to_string();
        longest = std::max(longest, e.warmup());
    }
    EXPECT_EQ(longest, 200u);
    EXPECT_EQ(frame.column(0).name, "O");
    EXPECT_EQ(frame.column(4).name, "Vol");
}

TEST(Catalog, ShippedFileMatchesEmbeddedText) {
    std::ifstream in(std::string(HSIF_SOURCE_DIR) + "/config/default_catalog.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), default_catalog_text());
}

TEST(Catalog, ParseAndErrors) {
    const auto c = IndicatorCatalog::parse("# comment\nRSI(14)\n  BOP  # trailing\nSTOD(14, 3)\nTR()\n");
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c.entries()[2].column_name(), "STOD_14_3");
    EXPECT_EQ(c.to_text(), "RSI(14)\nBOP\nSTOD(14,3)\nTR\n");
    EXPECT_THROW(IndicatorCatalog::parse("RSI(14)\nRSI(14)\n"), InvalidArgument);
    EXPECT_THROW(IndicatorCatalog::parse("RSI(0)\n"), ParseError);
    EXPECT_THROW(IndicatorCatalog::parse("RSI(14,2)\n"), ParseError);
    EXPECT_THROW(IndicatorCatalog::parse("FOO(1)\n"), ParseError);
    EXPECT_THROW(IndicatorCatalog::parse("RSI(x)\n"), ParseError);
    EXPECT_EQ(IndicatorCatalog::parse(c.to_text()).to_text(), c.to_text());
}

TEST(Catalog, ComputeErrors) {
    const auto s = synthetic::random_walk(150, 1);
    try {
        compute_catalog(s, IndicatorCatalog());
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_STREQ(e.what(), "empty catalog");
    }
    try {
        compute_catalog(s, default_catalog());
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("catalog entry MA(200)"), std::string::npos) << e.what();
    }
}
