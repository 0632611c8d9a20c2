#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsif/feature_frame.hpp"
#include "hsif/sentiment.hpp"

namespace hsif::fusion {

/// labels[k] is the movement of day k+1 relative to day k: 1 iff close rises.
std::vector<int> make_labels(const std::vector<double>& closes);

/// Pearson correlation; 0 when either input has zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct DroppedColumn {
    std::string name;
    std::string partner;
    double r = 0.0;
    bool operator==(const DroppedColumn&) const = default;
};

struct PruneResult {
    FeatureFrame frame;
    std::vector<DroppedColumn> dropped;
};

/// Greedy scan in column order: a column is dropped when |r| with an earlier
/// retained column exceeds `threshold`. Protected columns are never dropped.
PruneResult correlation_prune(const FeatureFrame& frame, double threshold,
                              const std::set<std::string>& protected_columns);

struct ScalerParams {
    std::vector<std::string> names;
    std::vector<double> min;
    std::vector<double> max;
    bool operator==(const ScalerParams&) const = default;
};

ScalerParams fit_minmax(const FeatureFrame& frame);
/// (v - min) / (max - min), 0 for constant columns. Columns are matched by name.
FeatureFrame apply_minmax(const FeatureFrame& frame, const ScalerParams& params);

/// Hard columns followed by pos, neu, neg. Dates must match exactly.
FeatureFrame fuse(const FeatureFrame& hard, const std::vector<sentiment::DailySentiment>& soft);

inline const std::vector<std::string> kSoftColumns = {"pos", "neu", "neg"};

enum class Split { train, validation, test };
std::string_view split_name(Split s);

struct Window {
    std::size_t anchor_row = 0;  // last feature row of the window
    int label = 0;               // movement of anchor_row + 1
    Split split = Split::train;
};

/// Fully defined feature matrix plus the windows cut from it.
struct WindowedDataset {
    std::vector<std::string> feature_names;
    std::vector<Date> dates;
    Eigen::MatrixXd features;  // rows() x F, one row per date
    std::size_t window_length = 0;
    std::vector<Window> windows;

    std::size_t feature_count() const { return static_cast<std::size_t>(features.cols()); }
    /// T x F block ending at the window's anchor row.
    Eigen::MatrixXd window_matrix(std::size_t i) const;
    std::vector<std::size_t> indices(Split s) const;
    std::size_t count(Split s) const;
};

/// One window per anchor t in [T-1, N-2]; labels as produced by make_labels on N closes.
WindowedDataset build_windows(const FeatureFrame& frame, const std::vector<int>& labels, std::size_t window_length);

struct SplitRatios {
    double train = 0.70;
    double validation = 0.15;
    double test = 0.15;
};

struct SplitSizes {
    std::size_t train = 0;
    std::size_t validation = 0;
    std::size_t test = 0;
    std::vector<std::string> warnings;
};

/// floor(train * m), floor(validation * m), remainder.
SplitSizes split_sizes(std::size_t m, const SplitRatios& ratios);

/// Tags windows in anchor order; returns warnings for empty splits.
std::vector<std::string> split_chronological(WindowedDataset& ds, const SplitRatios& ratios);

}  // namespace hsif::fusion
