#pragma once

// Synthetic sequence-classification tasks with known structure.

#include <cstdint>
#include <random>

#include "hsif/bilstm.hpp"

namespace tasks {

struct TaskOptions {
    std::size_t count = 200;
    std::size_t steps = 21;
    std::size_t features = 4;
    // Label depends on feature 0 averaged over timesteps [signal_begin, signal_end).
    std::size_t signal_begin = 0;
    std::size_t signal_end = 21;
    // With this probability the label is replaced by a fair coin flip.
    double label_noise = 0.0;
};

// Features uniform in [0,1]; label = 1 iff the mean of feature 0 over the
// signal span exceeds 0.5.
inline hsif::nn::SequenceData threshold_task(const TaskOptions& opt, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    hsif::nn::SequenceData d;
    for (std::size_t n = 0; n < opt.count; ++n) {
        hsif::nn::Matrix w(static_cast<Eigen::Index>(opt.steps), static_cast<Eigen::Index>(opt.features));
        for (Eigen::Index t = 0; t < w.rows(); ++t)
            for (Eigen::Index f = 0; f < w.cols(); ++f) w(t, f) = u(rng);
        double mean = 0.0;
        for (std::size_t t = opt.signal_begin; t < opt.signal_end; ++t) mean += w(static_cast<Eigen::Index>(t), 0);
        mean /= static_cast<double>(opt.signal_end - opt.signal_begin);
        int label = mean > 0.5 ? 1 : 0;
        if (u(rng) < opt.label_noise) label = u(rng) < 0.5 ? 1 : 0;
        d.windows.push_back(std::move(w));
        d.labels.push_back(label);
    }
    return d;
}

inline double accuracy(const hsif::nn::NetworkParams& net, const hsif::nn::SequenceData& d) {
    const auto probs = hsif::nn::predict_proba(net, d.windows);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) ok += hsif::nn::predicted_label(probs[i]) == d.labels[i];
    return static_cast<double>(ok) / static_cast<double>(probs.size());
}

}  // namespace tasks
