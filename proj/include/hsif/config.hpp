#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hsif/bilstm.hpp"
#include "hsif/dataset.hpp"
#include "hsif/errors.hpp"
#include "hsif/evaluation.hpp"

namespace hsif {

/// Bad configuration or a missing prerequisite; the CLI maps it to exit status 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct PipelineConfig {
    // Paths. They are not part of the config hash.
    std::string ohlcv;
    std::string tweets;
    std::string scored;
    std::string out_dir;
    std::string catalog;  // empty selects the built-in default catalog

    std::size_t window = 21;
    double train_ratio = 0.70;
    double validation_ratio = 0.15;
    double test_ratio = 0.15;
    double correlation_threshold = 0.95;
    std::string scaling = "train-fit";  // or "paper-literal"

    std::size_t hidden = 64;
    std::size_t layers = 2;
    bool bidirectional = true;
    double dropout = 0.20;
    std::size_t batch_size = 16;
    std::size_t max_epochs = 200;
    std::size_t patience = 20;
    double min_delta = 1e-4;
    double learning_rate = 0.001;
    bool shuffle = false;
    std::uint64_t seed = 42;

    double commission_rate = 0.001;
    double initial_capital = 100000.0;

    dataset::DatasetConfig dataset_config() const;
    nn::Architecture architecture(std::size_t input_dim) const;
    nn::TrainConfig train_config() const;
    eval::TradingConfig trading_config() const;
};

/// Every recognised key, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from text; throws UsageError("config.<key>: ...") on unknown keys or bad values.
void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value);

/// `key = value` lines; blank lines and `#` comments ignored.
void apply_config_text(PipelineConfig& cfg, std::string_view text);

/// Range and consistency checks; throws UsageError naming the field.
void validate(const PipelineConfig& cfg);

/// Canonical `key=value` lines for every non-path key.
std::string canonical_text(const PipelineConfig& cfg);
std::string config_hash(const PipelineConfig& cfg);

/// Defaults, then the config file (if any), then HSIF_SEED, then `overrides` in order.
/// Relative paths inside the config file resolve against the file's directory.
PipelineConfig resolve_config(const std::string& config_path, const char* env_seed,
                              const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace hsif
