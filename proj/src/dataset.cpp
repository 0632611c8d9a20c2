#include "hsif/dataset.hpp"

#include "hsif/catalog.hpp"
#include "hsif/errors.hpp"

namespace hsif::dataset {

std::set<std::string> protected_columns() {
    std::set<std::string> out(indicators::kRawColumns.begin(), indicators::kRawColumns.end());
    out.insert(fusion::kSoftColumns.begin(), fusion::kSoftColumns.end());
    return out;
}

BuiltDataset build_dataset(const FeatureFrame& hard, const std::vector<sentiment::DailySentiment>& daily,
                           const DatasetConfig& config) {
    BuiltDataset out;
    out.warmup_rows = hard.first_fully_defined_row();
    const FeatureFrame trimmed = hard.slice_rows(out.warmup_rows, hard.rows());
    const std::size_t n = trimmed.rows();
    const std::size_t t = config.window_length;
    if (t < 1) throw InvalidArgument("window length must be >= 1");
    if (n <= t) {
        throw InvalidArgument("series too short: " + std::to_string(n) + " rows after warmup for window " +
                              std::to_string(t));
    }
    const Column* close = trimmed.find("C");
    if (!close) throw InvalidArgument("hard features lack the close column 'C'");
    for (const auto& v : close->values) out.closes.push_back(*v);

    const auto sizes = fusion::split_sizes(n - t, config.ratios);
    out.warnings = sizes.warnings;
    if (sizes.train == 0) throw InvalidArgument("empty train split");
    out.fit_rows = config.scaling == ScalingMode::train_fit ? t - 1 + sizes.train : n;

    out.hard_width_before = trimmed.width();
    auto pruned = fusion::correlation_prune(trimmed.slice_rows(0, out.fit_rows), config.correlation_threshold,
                                            protected_columns());
    out.dropped = std::move(pruned.dropped);
    const FeatureFrame hard_kept = trimmed.select(pruned.frame.names());
    out.hard_width_after = hard_kept.width();

    // Market data may skip calendar days; keep the sentiment rows of trading days only.
    const std::set<Date> trading_days(trimmed.dates().begin(), trimmed.dates().end());
    std::vector<sentiment::DailySentiment> soft;
    for (const auto& d : daily)
        if (trading_days.count(d.date)) soft.push_back(d);
    const FeatureFrame fused = fusion::fuse(hard_kept, soft);

    out.scaler = fusion::fit_minmax(fused.slice_rows(0, out.fit_rows));
    const FeatureFrame scaled = fusion::apply_minmax(fused, out.scaler);

    out.data = fusion::build_windows(scaled, fusion::make_labels(out.closes), t);
    fusion::split_chronological(out.data, config.ratios);
    return out;
}

}  // namespace hsif::dataset
