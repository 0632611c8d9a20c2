#pragma once

// Brute-force metric definitions used to cross-check the evaluation module.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

struct Counts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct Metrics {
    double accuracy, precision, recall, f1, mcc;
};

inline Metrics metrics(const Counts& c) {
    const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
    const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
    Metrics m{};
    m.accuracy = (tp + tn) / (tp + tn + fp + fn);
    m.precision = tp + fp == 0 ? 0.0 : tp / (tp + fp);
    m.recall = tp + fn == 0 ? 0.0 : tp / (tp + fn);
    m.f1 = m.precision + m.recall == 0 ? 0.0 : 2 * m.precision * m.recall / (m.precision + m.recall);
    const double den = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    m.mcc = den == 0 ? 0.0 : (tp * tn - fp * fn) / den;
    return m;
}

// Every (positive, negative) pair; ties score one half.
inline double auc_all_pairs(const std::vector<int>& labels, const std::vector<double>& scores) {
    std::uint64_t twice_wins = 0, pos = 0, neg = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? pos : neg) += 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] != 0) continue;
            if (scores[i] > scores[j]) twice_wins += 2;
            else if (scores[i] == scores[j]) twice_wins += 1;
        }
    }
    return (static_cast<double>(twice_wins) / 2.0) / (static_cast<double>(pos) * static_cast<double>(neg));
}

}  // namespace oracle
