#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hsif/bilstm.hpp"
#include "hsif/fusion.hpp"

namespace hsif::nn {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
    NetworkParams params;
    AdamState optimizer;
    fusion::ScalerParams scaler;
    std::vector<std::string> feature_names;
    std::string catalog_hash;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::size_t best_epoch = 0;
    std::size_t window_length = 0;
};

/// Versioned JSON; weights as row-major nested lists.
std::string checkpoint_to_json(const Checkpoint& ck);

/// Throws Error("corrupt checkpoint: ...") for unreadable or inconsistent files and
/// Error("unsupported checkpoint version N") for other versions.
Checkpoint checkpoint_from_json(std::string_view text);

/// Throws InvalidArgument naming both feature counts when they differ.
void check_feature_count(const Checkpoint& ck, std::size_t dataset_features);

}  // namespace hsif::nn
