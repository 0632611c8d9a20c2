#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hsif/config.hpp"
#include "hsif/fusion.hpp"

namespace hsif::pipeline {

inline constexpr int kArtifactVersion = 1;

/// Stage names in execution order.
inline const std::vector<std::string> kStages = {"ingest", "build-dataset", "train", "evaluate", "backtest", "report"};

struct RunOptions {
    bool force = false;           // allow replacing artifacts already present in the output directory
    std::ostream* log = nullptr;  // progress lines; nullptr for silence
};

/// `runs/<UTC timestamp>` relative to the working directory.
std::string default_out_dir();

/// Runs one stage (or "all") against `cfg.out_dir`.
/// Throws UsageError for bad config, missing prerequisites or refused overwrites.
void run_stage(std::string_view stage, const PipelineConfig& cfg, const RunOptions& options = {});

void ingest(const PipelineConfig& cfg, const RunOptions& options = {});
void build_dataset(const PipelineConfig& cfg, const RunOptions& options = {});
void train(const PipelineConfig& cfg, const RunOptions& options = {});
void evaluate(const PipelineConfig& cfg, const RunOptions& options = {});
void backtest(const PipelineConfig& cfg, const RunOptions& options = {});
void report(const PipelineConfig& cfg, const RunOptions& options = {});

/// Windowed dataset reloaded from the build-dataset artifacts.
struct StoredDataset {
    fusion::WindowedDataset data;
    std::vector<double> anchor_closes;  // raw close on each window's anchor date
    fusion::ScalerParams scaler;
    std::string catalog_hash;
};

StoredDataset load_dataset(const std::filesystem::path& out_dir);

/// Writes a small synthetic prices/tweets/scored fixture into `dir`.
void write_synthetic_inputs(const std::filesystem::path& dir, std::size_t days, std::uint64_t seed, bool force);

}  // namespace hsif::pipeline
