#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hsif::nn {

using Matrix = Eigen::MatrixXd;

struct Architecture {
    std::size_t input_dim = 0;
    std::size_t hidden = 64;
    std::size_t layers = 2;
    bool bidirectional = true;
    double dropout = 0.20;

    std::size_t directions() const { return bidirectional ? 2 : 1; }
    /// Width of the vector fed to the dense layer.
    std::size_t output_dim() const { return directions() * hidden; }
    bool operator==(const Architecture&) const = default;
};

/// Throws InvalidArgument for zero sizes or dropout outside [0,1).
void validate(const Architecture& arch);

/// Gate blocks are stacked column-wise in the order input, forget, cell, output.
struct LstmDirection {
    Matrix wx;  // in x 4H
    Matrix wh;  // H x 4H
    Matrix b;   // 1 x 4H
};

struct RecurrentLayer {
    LstmDirection forward;
    LstmDirection backward;  // empty when the network is unidirectional
};

struct NetworkParams {
    Architecture arch;
    std::vector<RecurrentLayer> layers;
    Matrix dense_w;  // output_dim x 2
    Matrix dense_b;  // 1 x 2

    /// Every weight array in a fixed order (layers, forward before backward, wx/wh/b, then dense).
    std::vector<Matrix*> tensors();
    std::vector<const Matrix*> tensors() const;
    std::size_t parameter_count() const;
    /// Same shapes, all zeros.
    NetworkParams zeros_like() const;
    bool operator==(const NetworkParams& other) const;
};

/// Uniform +-sqrt(6/(fan_in+fan_out)) per gate block and for the dense layer;
/// forget-gate biases 1, other biases 0. Deterministic for a seed.
NetworkParams init_params(const Architecture& arch, std::uint64_t seed);

enum class Mode { train, eval };

/// Time-major batch: steps[t] is B x F.
using Batch = std::vector<Matrix>;

/// Stacks T x F windows into a time-major batch.
Batch make_batch(const std::vector<const Matrix*>& windows);
Batch make_batch(const std::vector<Matrix>& windows);

struct DirectionCache {
    std::vector<Matrix> gates;   // per time step, B x 4H after activation
    std::vector<Matrix> cell;    // per time step, B x H
    std::vector<Matrix> tanh_cell;
    std::vector<Matrix> hidden;  // per time step, B x H
};

struct LayerCache {
    std::vector<Matrix> input;  // per time step
    DirectionCache forward;
    DirectionCache backward;
    std::vector<Matrix> mask;  // scaled dropout mask per step (not the last layer); empty when inactive
};

struct ForwardCache {
    std::vector<LayerCache> layers;
    Matrix k;          // final states of the last layer, B x output_dim
    Matrix k_mask;     // dropout mask applied to k; empty when inactive
    Matrix k_dropped;  // input to the dense layer
    Matrix probs;      // B x 2
};

/// Probabilities (p_down, p_up) per batch row. Dropout is active only in train mode
/// and is a deterministic function of `dropout_seed`.
Matrix forward(const NetworkParams& params, const Batch& steps, Mode mode, std::uint64_t dropout_seed,
               ForwardCache* cache = nullptr);

inline constexpr double kProbabilityFloor = 1e-12;

/// -log(max(p_label, 1e-12)).
double loss(double p_down, double p_up, int label);
/// Mean cross-entropy over the batch rows.
double loss(const Matrix& probs, const std::vector<int>& labels);

/// Exact gradient of `scale * loss(probs, labels)` by backpropagation through time.
NetworkParams backward(const NetworkParams& params, const ForwardCache& cache, const std::vector<int>& labels,
                       double scale = 1.0);

struct AdamConfig {
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    bool operator==(const AdamConfig&) const = default;
};

struct AdamState {
    NetworkParams m;
    NetworkParams v;
    std::uint64_t step = 0;
};

AdamState adam_init(const NetworkParams& params);
/// Bias-corrected update of one array; `step` is the already incremented step count.
void adam_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, std::uint64_t step, const AdamConfig& cfg);
void adam_step(NetworkParams& params, const NetworkParams& grads, AdamState& state, const AdamConfig& cfg);

struct SequenceData {
    std::vector<Matrix> windows;  // each T x F
    std::vector<int> labels;
};

struct TrainConfig {
    std::size_t batch_size = 16;
    std::size_t max_epochs = 200;
    std::size_t patience = 20;
    double min_delta = 1e-4;
    AdamConfig adam;
    bool shuffle = false;
};

struct TrainReport {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    std::vector<double> val_accuracy;
    std::size_t best_epoch = 0;  // 1-based
    std::string stop_reason;     // "patience" or "max epochs"
    bool operator==(const TrainReport&) const = default;
};

struct TrainResult {
    NetworkParams params;  // from the best validation epoch
    AdamState optimizer;   // state after the best epoch
    TrainReport report;
};

TrainResult train(const Architecture& arch, const SequenceData& train_set, const SequenceData& validation_set,
                  const TrainConfig& cfg, std::uint64_t seed);

/// Eval-mode (p_down, p_up) per window.
std::vector<std::array<double, 2>> predict_proba(const NetworkParams& params, const std::vector<Matrix>& windows);

/// argmax with ties going to the up class.
inline int predicted_label(const std::array<double, 2>& p) { return p[1] >= p[0] ? 1 : 0; }

}  // namespace hsif::nn
