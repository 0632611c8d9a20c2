#include "hsif/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <functional>

#include "hsif/errors.hpp"
#include "hsif/hashing.hpp"
#include "hsif/indicators.hpp"

namespace hsif::indicators {

namespace {

struct KindInfo {
    Kind kind;
    std::string_view name;
    std::size_t arity;
};

constexpr std::array<KindInfo, 33> kKinds{{
    {Kind::MA, "MA", 1},
    {Kind::EMA, "EMA", 1},
    {Kind::ROC, "ROC", 1},
    {Kind::MOM, "MOM", 1},
    {Kind::RSI, "RSI", 1},
    {Kind::STOK, "STOK", 1},
    {Kind::STOD, "STOD", 2},
    {Kind::TR1, "TR1", 0},
    {Kind::TR2, "TR2", 0},
    {Kind::TR3, "TR3", 0},
    {Kind::TR, "TR", 0},
    {Kind::ATR, "ATR", 1},
    {Kind::PLUS_DI, "PLUS_DI", 1},
    {Kind::MINUS_DI, "MINUS_DI", 1},
    {Kind::DX, "DX", 1},
    {Kind::ADX, "ADX", 1},
    {Kind::MDI, "MDI", 1},
    {Kind::PDI, "PDI", 1},
    {Kind::AROON_UP, "AROON_UP", 1},
    {Kind::AROON_DOWN, "AROON_DOWN", 1},
    {Kind::BOP, "BOP", 0},
    {Kind::PPO, "PPO", 2},
    {Kind::CMO, "CMO", 1},
    {Kind::MFI, "MFI", 1},
    {Kind::MACD, "MACD", 2},
    {Kind::MACD_SIGNAL, "MACD_SIGNAL", 3},
    {Kind::MACD_HIST, "MACD_HIST", 3},
    {Kind::CCI, "CCI", 1},
    {Kind::BB_LOWER, "BB_LOWER", 2},
    {Kind::BB_MIDDLE, "BB_MIDDLE", 2},
    {Kind::BB_UPPER, "BB_UPPER", 2},
    {Kind::FI, "FI", 1},
    {Kind::EOM, "EOM", 1},
}};

constexpr int kMaxWindow = 100000;
constexpr int kMaxBandWidth = 10;

const KindInfo& info(Kind kind) {
    for (const auto& k : kKinds) {
        if (k.kind == kind) return k;
    }
    throw InvalidArgument("unknown indicator kind");
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string join_params(const std::vector<int>& params) {
    std::string out;
    for (int p : params) out += "_" + std::to_string(p);
    return out;
}

void validate(const CatalogEntry& e) {
    const auto& k = info(e.kind);
    if (e.params.size() != k.arity) {
        throw InvalidArgument(std::string(k.name) + " takes " + std::to_string(k.arity) + " parameter(s)");
    }
    for (std::size_t i = 0; i < e.params.size(); ++i) {
        const bool band_width = (e.kind == Kind::BB_LOWER || e.kind == Kind::BB_MIDDLE ||
                                 e.kind == Kind::BB_UPPER) && i == 1;
        const int hi = band_width ? kMaxBandWidth : kMaxWindow;
        if (e.params[i] < 1 || e.params[i] > hi) {
            throw InvalidArgument(e.to_string() + ": parameter out of range [1, " + std::to_string(hi) + "]");
        }
    }
}

}  // namespace

std::string_view kind_name(Kind kind) { return info(kind).name; }

std::string CatalogEntry::to_string() const {
    std::string out(kind_name(kind));
    if (params.empty()) return out;
    out.push_back('(');
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(params[i]);
    }
    out.push_back(')');
    return out;
}

std::string CatalogEntry::column_name() const {
    switch (kind) {
        case Kind::MA: return "MA" + join_params(params);
        case Kind::EMA: return "EMA" + join_params(params);
        case Kind::ROC: return "ROC" + join_params(params);
        case Kind::MOM: return "MOM" + join_params(params);
        case Kind::RSI: return "RSI" + join_params(params);
        case Kind::STOK: return "STOK" + join_params(params);
        case Kind::STOD: return "STOD" + join_params(params);
        case Kind::TR1: return "tr1";
        case Kind::TR2: return "tr2";
        case Kind::TR3: return "tr3";
        case Kind::TR: return "TR";
        case Kind::ATR: return "ATR" + join_params(params);
        case Kind::PLUS_DI: return "+DI" + join_params(params);
        case Kind::MINUS_DI: return "-DI" + join_params(params);
        case Kind::DX: return "DX" + join_params(params);
        case Kind::ADX: return "ADX" + join_params(params);
        case Kind::MDI: return "MDI" + join_params(params);
        case Kind::PDI: return "PDI" + join_params(params);
        case Kind::AROON_UP: return "AroonUp" + join_params(params);
        case Kind::AROON_DOWN: return "AroonDown" + join_params(params);
        case Kind::BOP: return "BOP";
        case Kind::PPO: return "PPO" + join_params(params);
        case Kind::CMO: return "CMO" + join_params(params);
        case Kind::MFI: return "MFI" + join_params(params);
        case Kind::MACD: return "MACD" + join_params(params);
        case Kind::MACD_SIGNAL: return "MACD_Signal" + join_params(params);
        case Kind::MACD_HIST: return "MACD_Hist" + join_params(params);
        case Kind::CCI: return "CCI" + join_params(params);
        case Kind::BB_LOWER: return "BB_LB" + join_params(params);
        case Kind::BB_MIDDLE: return "BB_MB" + join_params(params);
        case Kind::BB_UPPER: return "BB_UB" + join_params(params);
        case Kind::FI: return "FI" + join_params(params);
        case Kind::EOM: return "EOM" + join_params(params);
    }
    throw InvalidArgument("unknown indicator kind");
}

std::size_t CatalogEntry::warmup() const {
    auto p = [&](std::size_t i) { return static_cast<std::size_t>(params.at(i)); };
    switch (kind) {
        case Kind::MA:
        case Kind::EMA:
        case Kind::ROC:
        case Kind::MOM:
        case Kind::STOK:
        case Kind::CCI:
        case Kind::BB_LOWER:
        case Kind::BB_MIDDLE:
        case Kind::BB_UPPER:
            return p(0) - 1;
        case Kind::RSI:
        case Kind::CMO:
        case Kind::MFI:
        case Kind::ATR:
        case Kind::PLUS_DI:
        case Kind::MINUS_DI:
        case Kind::DX:
        case Kind::MDI:
        case Kind::PDI:
        case Kind::AROON_UP:
        case Kind::AROON_DOWN:
        case Kind::FI:
        case Kind::EOM:
            return p(0);
        case Kind::STOD: return p(0) + p(1) - 2;
        case Kind::TR1:
        case Kind::BOP: return 0;
        case Kind::TR2:
        case Kind::TR3:
        case Kind::TR: return 1;
        case Kind::ADX: return 2 * p(0) - 1;
        case Kind::PPO:
        case Kind::MACD: return std::max(p(0), p(1)) - 1;
        case Kind::MACD_SIGNAL:
        case Kind::MACD_HIST: return std::max(p(0), p(1)) + p(2) - 2;
    }
    throw InvalidArgument("unknown indicator kind");
}

IndicatorCatalog::IndicatorCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        validate(entries_[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (entries_[j] == entries_[i]) throw InvalidArgument("duplicate catalog entry " + entries_[i].to_string());
        }
    }
}

IndicatorCatalog IndicatorCatalog::parse(std::string_view text) {
    std::vector<CatalogEntry> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        std::string name = line;
        std::vector<int> params;
        if (const auto open = line.find('('); open != std::string::npos) {
            if (line.back() != ')') throw ParseError("missing ')' in '" + line + "'", line_no);
            name = trim(line.substr(0, open));
            const std::string inner = line.substr(open + 1, line.size() - open - 2);
            std::size_t p = 0;
            while (p <= inner.size() && !trim(inner).empty()) {
                const auto comma = inner.find(',', p);
                const std::string tok = trim(inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p));
                int v = 0;
                auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
                    throw ParseError("malformed parameter '" + tok + "'", line_no);
                }
                params.push_back(v);
                if (comma == std::string::npos) break;
                p = comma + 1;
            }
        }
        auto it = std::find_if(kKinds.begin(), kKinds.end(), [&](const KindInfo& k) { return k.name == name; });
        if (it == kKinds.end()) throw ParseError("unknown indicator '" + name + "'", line_no);
        CatalogEntry entry{it->kind, std::move(params)};
        try {
            validate(entry);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), line_no);
        }
        entries.push_back(std::move(entry));
    }
    return IndicatorCatalog(std::move(entries));
}

std::string IndicatorCatalog::to_text() const {
    std::string out;
    for (const auto& e : entries_) out += e.to_string() + "\n";
    return out;
}

std::string IndicatorCatalog::hash() const { return sha256_hex(to_text()); }

std::string_view default_catalog_text() {
    static const std::string text =
#include "hsif/default_catalog_text.inc"
        ;
    return text;
}

IndicatorCatalog default_catalog() { return IndicatorCatalog::parse(default_catalog_text()); }

namespace {

OptionalSeries compute_entry(const marketdata::CandleSeries& s, const CatalogEntry& e,
                             const std::vector<double>& close) {
    const auto& p = e.params;
    switch (e.kind) {
        case Kind::MA: return sma(close, p[0]).values;
        case Kind::EMA: return ema(close, p[0]).values;
        case Kind::ROC: return roc(close, p[0]).values;
        case Kind::MOM: return mom(close, p[0]).values;
        case Kind::RSI: return rsi(close, p[0]).values;
        case Kind::STOK: return stochastic(s, p[0], 1).k.values;
        case Kind::STOD: return stochastic(s, p[0], p[1]).d.values;
        // The true-range components need only one bar of history.
        case Kind::TR1: return true_range_atr(s, 1).tr1.values;
        case Kind::TR2: return true_range_atr(s, 1).tr2.values;
        case Kind::TR3: return true_range_atr(s, 1).tr3.values;
        case Kind::TR: return true_range_atr(s, 1).tr.values;
        case Kind::ATR: return true_range_atr(s, p[0]).atr.values;
        case Kind::PLUS_DI: return directional_system(s, p[0]).plus_di.values;
        case Kind::MINUS_DI: return directional_system(s, p[0]).minus_di.values;
        case Kind::DX: return directional_system(s, p[0]).dx.values;
        case Kind::ADX: return directional_system(s, p[0]).adx.values;
        case Kind::MDI: return conditional_dm(s, p[0]).mdi.values;
        case Kind::PDI: return conditional_dm(s, p[0]).pdi.values;
        case Kind::AROON_UP: return aroon(s, p[0]).up.values;
        case Kind::AROON_DOWN: return aroon(s, p[0]).down.values;
        case Kind::BOP: return bop(s).values;
        case Kind::PPO: return ppo(close, p[0], p[1]).values;
        case Kind::CMO: return cmo(close, p[0]).values;
        case Kind::MFI: return mfi(s, p[0]).values;
        case Kind::MACD: return macd(close, p[0], p[1], 1).macd.values;
        case Kind::MACD_SIGNAL: return macd(close, p[0], p[1], p[2]).signal.values;
        case Kind::MACD_HIST: return macd(close, p[0], p[1], p[2]).histogram.values;
        case Kind::CCI: return cci(s, p[0]).values;
        case Kind::BB_LOWER: return bollinger(close, p[0], p[1]).lower.values;
        case Kind::BB_MIDDLE: return bollinger(close, p[0], p[1]).middle.values;
        case Kind::BB_UPPER: return bollinger(close, p[0], p[1]).upper.values;
        case Kind::FI: return force_index(s, p[0]).values;
        case Kind::EOM: return eom(s, p[0]).values;
    }
    throw InvalidArgument("unknown indicator kind");
}

}  // namespace

FeatureFrame compute_catalog(const marketdata::CandleSeries& series, const IndicatorCatalog& catalog) {
    if (catalog.empty()) throw InvalidArgument("empty catalog");
    if (series.empty()) throw InvalidArgument("empty series");

    FeatureFrame frame(series.dates());
    const std::vector<double> raw[] = {series.opens(), series.highs(), series.lows(), series.closes(),
                                       series.volumes()};
    for (std::size_t k = 0; k < kRawColumns.size(); ++k) {
        frame.add_column(kRawColumns[k], OptionalSeries(raw[k].begin(), raw[k].end()));
    }
    const auto& close = raw[3];
    for (const auto& entry : catalog.entries()) {
        try {
            frame.add_column(entry.column_name(), compute_entry(series, entry, close));
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("catalog entry " + entry.to_string() + ": " + e.what());
        }
    }
    return frame;
}

}  // namespace hsif::indicators
