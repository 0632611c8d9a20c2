#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hsif/feature_frame.hpp"
#include "hsif/marketdata.hpp"

namespace hsif::indicators {

enum class Kind {
    MA, EMA, ROC, MOM, RSI, STOK, STOD,
    TR1, TR2, TR3, TR, ATR,
    PLUS_DI, MINUS_DI, DX, ADX, MDI, PDI,
    AROON_UP, AROON_DOWN, BOP, PPO, CMO, MFI,
    MACD, MACD_SIGNAL, MACD_HIST, CCI,
    BB_LOWER, BB_MIDDLE, BB_UPPER, FI, EOM,
};

std::string_view kind_name(Kind kind);

struct CatalogEntry {
    Kind kind;
    std::vector<int> params;

    /// Canonical `KIND(p1,p2)` text; parameterless kinds render as `KIND`.
    std::string to_string() const;
    /// Name of the feature column this entry produces, e.g. `RSI_14`.
    std::string column_name() const;
    /// Number of leading rows without a value.
    std::size_t warmup() const;

    bool operator==(const CatalogEntry&) const = default;
};

/// Ordered, duplicate-free list of indicator entries forming the candidate hard features.
class IndicatorCatalog {
public:
    IndicatorCatalog() = default;
    /// Validates uniqueness, parameter arity and ranges; throws InvalidArgument.
    explicit IndicatorCatalog(std::vector<CatalogEntry> entries);

    /// One `KIND(param,...)` per line; `#` starts a comment.
    static IndicatorCatalog parse(std::string_view text);
    std::string to_text() const;

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// SHA-256 of the canonical text.
    std::string hash() const;

private:
    std::vector<CatalogEntry> entries_;
};

inline constexpr std::string_view kDefaultCatalogVersion = "hsif-default-53/v1";

/// Text of the shipped default catalog (48 indicator columns + 5 raw = 53 features).
std::string_view default_catalog_text();
IndicatorCatalog default_catalog();

/// Raw columns emitted ahead of every catalog entry.
inline const std::vector<std::string> kRawColumns = {"O", "H", "L", "C", "Vol"};

/// Raw O/H/L/C/Vol columns followed by one column per catalog entry, in catalog order.
FeatureFrame compute_catalog(const marketdata::CandleSeries& series, const IndicatorCatalog& catalog);

}  // namespace hsif::indicators
