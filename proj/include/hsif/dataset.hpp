#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hsif/feature_frame.hpp"
#include "hsif/fusion.hpp"
#include "hsif/sentiment.hpp"

namespace hsif::dataset {

enum class ScalingMode {
    train_fit,      // scaler and pruning see training rows only
    paper_literal,  // scaler and pruning see every row before the split
};

struct DatasetConfig {
    std::size_t window_length = 21;
    fusion::SplitRatios ratios;
    double correlation_threshold = 0.95;
    ScalingMode scaling = ScalingMode::train_fit;
};

struct BuiltDataset {
    fusion::WindowedDataset data;
    std::vector<double> closes;  // raw close per row of data.features
    std::size_t warmup_rows = 0;
    std::size_t fit_rows = 0;  // leading rows used for pruning and scaling
    std::size_t hard_width_before = 0;
    std::size_t hard_width_after = 0;
    std::vector<fusion::DroppedColumn> dropped;
    fusion::ScalerParams scaler;
    std::vector<std::string> warnings;
};

/// Columns that pruning never drops: the raw candle columns and the soft columns.
std::set<std::string> protected_columns();

/// Trim warmup, prune hard columns, fuse sentiment, scale, label, window and split.
/// `hard` is the raw output of compute_catalog; `daily` must cover every post-warmup date.
BuiltDataset build_dataset(const FeatureFrame& hard, const std::vector<sentiment::DailySentiment>& daily,
                           const DatasetConfig& config);

}  // namespace hsif::dataset
