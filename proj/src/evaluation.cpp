#include "hsif/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hsif/csv.hpp"
#include "hsif/errors.hpp"

namespace hsif::eval {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

void check_closes(const std::vector<double>& closes) {
    if (closes.empty()) throw InvalidArgument("no closes to trade on");
    for (double c : closes)
        if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("close prices must be positive");
}

Date date_at(const std::vector<Date>& dates, std::size_t i) {
    return dates.empty() ? Date::from_days(static_cast<std::int32_t>(i)) : dates[i];
}

}  // namespace

ConfusionCounts confusion(const std::vector<int>& labels, const std::vector<int>& predictions) {
    if (labels.size() != predictions.size()) throw InvalidArgument("labels and predictions differ in length");
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i], p = predictions[i];
        if ((y != 0 && y != 1) || (p != 0 && p != 1)) throw InvalidArgument("labels and predictions must be 0 or 1");
        if (p == 1) {
            (y == 1 ? c.tp : c.fp) += 1;
        } else {
            (y == 0 ? c.tn : c.fn) += 1;
        }
    }
    return c;
}

ClassificationReport classification_report(const ConfusionCounts& c) {
    if (c.total() == 0) throw InvalidArgument("confusion counts are all zero");
    const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
    const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
    ClassificationReport r;
    r.accuracy = (tp + tn) / (tp + tn + fp + fn);
    r.precision = ratio(tp, tp + fp);
    r.recall = ratio(tp, tp + fn);
    r.f1 = ratio(2 * r.precision * r.recall, r.precision + r.recall);
    r.mcc = ratio(tp * tn - fp * fn, std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)));
    return r;
}

double roc_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
    if (labels.size() != scores.size()) throw InvalidArgument("labels and scores differ in length");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (double s : scores)
        if (std::isnan(s)) throw InvalidArgument("scores contain NaN");
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double positives = 0.0, negatives = 0.0, rank_sum = 0.0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) {
                rank_sum += mid_rank;
                positives += 1.0;
            } else if (labels[order[k]] == 0) {
                negatives += 1.0;
            } else {
                throw InvalidArgument("labels must be 0 or 1");
            }
        }
        i = j;
    }
    if (positives == 0.0 || negatives == 0.0) throw InvalidArgument("roc_auc needs both classes");
    const double u = rank_sum - positives * (positives + 1.0) / 2.0;
    return u / (positives * negatives);
}

std::string_view action_name(Action a) {
    switch (a) {
        case Action::buy: return "buy";
        case Action::sell: return "sell";
        case Action::hold: return "hold";
    }
    return "?";
}

double TradeLedger::final_equity() const {
    if (entries.empty()) throw InvalidArgument("empty ledger");
    return entries.back().equity;
}

double TradeLedger::total_commission() const {
    double sum = 0.0;
    for (const auto& e : entries) sum += e.commission;
    return sum;
}

std::size_t TradeLedger::trades() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.action != Action::hold; }));
}

TradeLedger simulate_trading(const std::vector<double>& closes, const std::vector<int>& predictions,
                             const TradingConfig& cfg, const std::vector<Date>& dates) {
    check_closes(closes);
    if (predictions.size() != closes.size()) throw InvalidArgument("need one prediction per close");
    if (!dates.empty() && dates.size() != closes.size()) throw InvalidArgument("need one date per close");
    if (cfg.commission_rate < 0.0 || cfg.commission_rate >= 1.0) throw InvalidArgument("commission rate outside [0,1)");
    if (!(cfg.initial_capital > 0.0)) throw InvalidArgument("initial capital must be positive");

    TradeLedger ledger;
    double cash = cfg.initial_capital, units = 0.0;
    int previous = -1;
    for (std::size_t d = 0; d < closes.size(); ++d) {
        const double close = closes[d];
        const int pred = predictions[d];
        if (pred != 0 && pred != 1) throw InvalidArgument("predictions must be 0 or 1");
        LedgerEntry e;
        e.date = date_at(dates, d);
        e.prediction = pred;
        e.close = close;
        if (pred != previous) {
            if (pred == 1 && cash > 0.0) {
                e.commission = cfg.commission_rate * cash;
                cash -= e.commission;
                units += cash / close;
                cash = 0.0;
                e.action = Action::buy;
            } else if (pred == 0 && units > 0.0) {
                cash += units * close;
                units = 0.0;
                e.commission = cfg.commission_rate * cash;
                cash -= e.commission;
                e.action = Action::sell;
            }
        }
        previous = pred;
        e.units = units;
        e.cash = cash;
        e.equity = cash + units * close;
        ledger.entries.push_back(e);
    }
    return ledger;
}

TradeLedger buy_and_hold(const std::vector<double>& closes, const TradingConfig& cfg, const std::vector<Date>& dates) {
    check_closes(closes);
    if (!dates.empty() && dates.size() != closes.size()) throw InvalidArgument("need one date per close");
    TradeLedger ledger;
    const double units = cfg.initial_capital / closes.front();
    for (std::size_t d = 0; d < closes.size(); ++d) {
        LedgerEntry e;
        e.date = date_at(dates, d);
        e.prediction = 1;
        e.action = d == 0 ? Action::buy : Action::hold;
        e.close = closes[d];
        e.units = units;
        e.equity = units * closes[d];
        ledger.entries.push_back(e);
    }
    return ledger;
}

std::string equity_csv(const TradeLedger& strategy, const TradeLedger& buyhold) {
    if (strategy.entries.size() != buyhold.entries.size()) throw InvalidArgument("ledgers differ in length");
    std::string out = "date,strategy_equity,buyhold_equity,action,commission\n";
    for (std::size_t i = 0; i < strategy.entries.size(); ++i) {
        const auto& s = strategy.entries[i];
        out += s.date.to_string() + "," + csv::format_double(s.equity) + "," +
               csv::format_double(buyhold.entries[i].equity) + "," + std::string(action_name(s.action)) + "," +
               csv::format_double(s.commission) + "\n";
    }
    return out;
}

}  // namespace hsif::eval
