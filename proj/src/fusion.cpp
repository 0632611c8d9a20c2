#include "hsif/fusion.hpp"

#include <cmath>

#include "hsif/errors.hpp"

namespace hsif::fusion {

namespace {

std::vector<double> defined_values(const FeatureFrame& frame, std::size_t col) {
    std::vector<double> out(frame.rows());
    for (std::size_t r = 0; r < frame.rows(); ++r) out[r] = frame.at(r, col);
    return out;
}

}  // namespace

std::vector<int> make_labels(const std::vector<double>& closes) {
    if (closes.size() < 2) throw InvalidArgument("need at least 2 closes to label movements");
    std::vector<int> out(closes.size() - 1);
    for (std::size_t t = 0; t + 1 < closes.size(); ++t) out[t] = closes[t + 1] > closes[t] ? 1 : 0;
    return out;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
    if (x.empty()) return 0.0;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

PruneResult correlation_prune(const FeatureFrame& frame, double threshold,
                              const std::set<std::string>& protected_columns) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidArgument("threshold must lie in (0,1)");
    if (!frame.fully_defined()) throw InvalidArgument("correlation_prune: frame has undefined cells");

    std::vector<std::vector<double>> values;
    for (std::size_t c = 0; c < frame.width(); ++c) values.push_back(defined_values(frame, c));

    PruneResult result;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < frame.width(); ++j) {
        const auto& name = frame.column(j).name;
        bool drop = false;
        if (!protected_columns.count(name)) {
            for (std::size_t i : kept) {
                const double r = pearson(values[i], values[j]);
                if (std::abs(r) > threshold) {
                    result.dropped.push_back({name, frame.column(i).name, r});
                    drop = true;
                    break;
                }
            }
        }
        if (!drop) kept.push_back(j);
    }
    std::vector<std::string> names;
    for (std::size_t i : kept) names.push_back(frame.column(i).name);
    result.frame = frame.select(names);
    return result;
}

ScalerParams fit_minmax(const FeatureFrame& frame) {
    if (frame.rows() == 0) throw InvalidArgument("fit_minmax: no rows");
    ScalerParams p;
    for (std::size_t c = 0; c < frame.width(); ++c) {
        double lo = frame.at(0, c), hi = lo;
        for (std::size_t r = 1; r < frame.rows(); ++r) {
            const double v = frame.at(r, c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        p.names.push_back(frame.column(c).name);
        p.min.push_back(lo);
        p.max.push_back(hi);
    }
    return p;
}

FeatureFrame apply_minmax(const FeatureFrame& frame, const ScalerParams& params) {
    FeatureFrame out(frame.dates());
    for (const auto& col : frame.columns()) {
        std::size_t k = 0;
        while (k < params.names.size() && params.names[k] != col.name) ++k;
        if (k == params.names.size()) throw InvalidArgument("scaler has no parameters for column '" + col.name + "'");
        const double lo = params.min[k], span = params.max[k] - params.min[k];
        OptionalSeries scaled(col.values.size());
        for (std::size_t r = 0; r < col.values.size(); ++r) {
            if (!col.values[r]) continue;
            scaled[r] = span > 0.0 ? (*col.values[r] - lo) / span : 0.0;
        }
        out.add_column(col.name, std::move(scaled));
    }
    return out;
}

FeatureFrame fuse(const FeatureFrame& hard, const std::vector<sentiment::DailySentiment>& soft) {
    if (hard.width() == 0) throw InvalidArgument("no hard features");
    const auto& dates = hard.dates();
    const std::size_t n = std::min(dates.size(), soft.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (dates[i] != soft[i].date) {
            throw InvalidArgument("date axes diverge at row " + std::to_string(i) + ": hard " +
                                  dates[i].to_string() + ", soft " + soft[i].date.to_string());
        }
    }
    if (dates.size() != soft.size()) {
        const bool hard_longer = dates.size() > soft.size();
        const Date first_missing = hard_longer ? dates[n] : soft[n].date;
        throw InvalidArgument(std::string("date axes diverge at ") + first_missing.to_string() + ": only in " +
                              (hard_longer ? "hard" : "soft") + " features");
    }
    FeatureFrame out = hard;
    OptionalSeries pos(n), neu(n), neg(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = soft[i].pos;
        neu[i] = soft[i].neu;
        neg[i] = soft[i].neg;
    }
    out.add_column(kSoftColumns[0], std::move(pos));
    out.add_column(kSoftColumns[1], std::move(neu));
    out.add_column(kSoftColumns[2], std::move(neg));
    return out;
}

std::string_view split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    return "?";
}

Eigen::MatrixXd WindowedDataset::window_matrix(std::size_t i) const {
    const auto& w = windows.at(i);
    const auto first = static_cast<Eigen::Index>(w.anchor_row + 1 - window_length);
    return features.middleRows(first, static_cast<Eigen::Index>(window_length));
}

std::vector<std::size_t> WindowedDataset::indices(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < windows.size(); ++i)
        if (windows[i].split == s) out.push_back(i);
    return out;
}

std::size_t WindowedDataset::count(Split s) const { return indices(s).size(); }

WindowedDataset build_windows(const FeatureFrame& frame, const std::vector<int>& labels, std::size_t window_length) {
    const std::size_t n = frame.rows();
    if (window_length < 1) throw InvalidArgument("window length must be >= 1");
    if (n <= window_length) throw InvalidArgument("series too short");
    if (labels.size() != n - 1) {
        throw InvalidArgument("expected " + std::to_string(n - 1) + " labels, got " + std::to_string(labels.size()));
    }
    WindowedDataset ds;
    ds.feature_names = frame.names();
    ds.dates = frame.dates();
    ds.window_length = window_length;
    ds.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(frame.width()));
    for (std::size_t c = 0; c < frame.width(); ++c)
        for (std::size_t r = 0; r < n; ++r)
            ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = frame.at(r, c);
    for (std::size_t t = window_length - 1; t + 1 < n; ++t) ds.windows.push_back({t, labels[t], Split::train});
    return ds;
}

SplitSizes split_sizes(std::size_t m, const SplitRatios& ratios) {
    if (ratios.train <= 0.0 || ratios.validation <= 0.0 || ratios.test <= 0.0)
        throw InvalidArgument("split ratios must be positive");
    if (std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9)
        throw InvalidArgument("split ratios must sum to 1");
    // The small epsilon keeps products such as 0.7 * 10 from flooring to 6.
    auto take = [m](double r) { return static_cast<std::size_t>(std::floor(r * static_cast<double>(m) + 1e-9)); };
    SplitSizes s;
    s.train = take(ratios.train);
    s.validation = take(ratios.validation);
    s.test = m - s.train - s.validation;
    if (s.train == 0) s.warnings.push_back("empty train split");
    if (s.validation == 0) s.warnings.push_back("empty validation split");
    if (s.test == 0) s.warnings.push_back("empty test split");
    return s;
}

std::vector<std::string> split_chronological(WindowedDataset& ds, const SplitRatios& ratios) {
    const auto sizes = split_sizes(ds.windows.size(), ratios);
    for (std::size_t i = 0; i < ds.windows.size(); ++i) {
        ds.windows[i].split = i < sizes.train                      ? Split::train
                              : i < sizes.train + sizes.validation ? Split::validation
                                                                   : Split::test;
    }
    return sizes.warnings;
}

}  // namespace hsif::fusion
