#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsif/date.hpp"

namespace hsif::eval {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts confusion(const std::vector<int>& labels, const std::vector<int>& predictions);

struct ClassificationReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double mcc = 0.0;
};

/// Zero denominators yield 0. Throws InvalidArgument when every count is zero.
ClassificationReport classification_report(const ConfusionCounts& c);

/// Mann-Whitney estimate with tied scores counting one half.
/// Throws InvalidArgument unless both classes are present.
double roc_auc(const std::vector<int>& labels, const std::vector<double>& scores);

enum class Action { buy, sell, hold };
std::string_view action_name(Action a);

struct TradingConfig {
    double initial_capital = 100000.0;
    double commission_rate = 0.001;
};

struct LedgerEntry {
    Date date;
    int prediction = 0;
    Action action = Action::hold;
    double close = 0.0;
    double units = 0.0;
    double cash = 0.0;
    double commission = 0.0;
    double equity = 0.0;  // cash + units * close
};

struct TradeLedger {
    std::vector<LedgerEntry> entries;
    double final_equity() const;
    double total_commission() const;
    std::size_t trades() const;
};

/// All-in/all-out strategy acting at each day's close when the prediction
/// changes. A sell with no units or a buy with no cash does nothing.
/// `dates` may be empty, in which case entries carry day indices.
TradeLedger simulate_trading(const std::vector<double>& closes, const std::vector<int>& predictions,
                             const TradingConfig& cfg = {}, const std::vector<Date>& dates = {});

/// Converts all capital at the first close, commission free, and never trades again.
TradeLedger buy_and_hold(const std::vector<double>& closes, const TradingConfig& cfg = {},
                         const std::vector<Date>& dates = {});

/// `date,strategy_equity,buyhold_equity,action,commission`.
std::string equity_csv(const TradeLedger& strategy, const TradeLedger& buyhold);

}  // namespace hsif::eval
