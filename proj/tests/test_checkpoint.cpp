#include <gtest/gtest.h>

#include <random>

#include "hsif/checkpoint.hpp"
#include "hsif/errors.hpp"

using namespace hsif;
using namespace hsif::nn;

namespace {

Checkpoint sample(std::size_t features, std::uint64_t seed) {
    Architecture a;
    a.input_dim = features;
    a.hidden = 5;
    a.layers = 2;
    Checkpoint ck;
    ck.params = init_params(a, seed);
    ck.optimizer = adam_init(ck.params);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1e-3);
    for (auto* t : ck.optimizer.m.tensors())
        for (Eigen::Index i = 0; i < t->size(); ++i) t->data()[i] = g(rng);
    ck.optimizer.step = 17;
    for (std::size_t f = 0; f < features; ++f) {
        ck.feature_names.push_back("f" + std::to_string(f));
        ck.scaler.names.push_back("f" + std::to_string(f));
        ck.scaler.min.push_back(-0.1 * static_cast<double>(f));
        ck.scaler.max.push_back(1.0 / 3.0 + static_cast<double>(f));
    }
    ck.catalog_hash = "abc";
    ck.config_hash = "def";
    ck.seed = 0xFFFFFFFFFFFFFFFFull;
    ck.best_epoch = 12;
    ck.window_length = 4;
    return ck;
}

}  // namespace

TEST(Checkpoint, RoundTripIsBitExact) {
    const auto ck = sample(3, 7);
    const auto text = checkpoint_to_json(ck);
    const auto back = checkpoint_from_json(text);
    EXPECT_TRUE(back.params == ck.params);
    EXPECT_TRUE(back.optimizer.m == ck.optimizer.m);
    EXPECT_TRUE(back.optimizer.v == ck.optimizer.v);
    EXPECT_EQ(back.optimizer.step, 17u);
    EXPECT_EQ(back.scaler, ck.scaler);
    EXPECT_EQ(back.seed, ck.seed);
    EXPECT_EQ(back.best_epoch, 12u);
    EXPECT_EQ(checkpoint_to_json(back), text);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Matrix> windows;
    for (int i = 0; i < 10; ++i) {
        Matrix w(4, 3);
        for (Eigen::Index k = 0; k < w.size(); ++k) w.data()[k] = g(rng);
        windows.push_back(w);
    }
    EXPECT_EQ(predict_proba(back.params, windows), predict_proba(ck.params, windows));
}

TEST(Checkpoint, TruncatedFileIsCorrupt) {
    const auto text = checkpoint_to_json(sample(3, 7));
    try {
        checkpoint_from_json(text.substr(0, text.size() / 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()), "corrupt checkpoint");
    }
}

TEST(Checkpoint, VersionAndShapeMismatch) {
    auto text = checkpoint_to_json(sample(3, 7));
    auto bumped = text;
    bumped.replace(bumped.find("\"format_version\": 1"), 19, "\"format_version\": 2");
    try {
        checkpoint_from_json(bumped);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()), "unsupported checkpoint version 2");
    }
    auto reshaped = text;
    reshaped.replace(reshaped.find("\"hidden\": 5"), 11, "\"hidden\": 6");
    try {
        checkpoint_from_json(reshaped);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("corrupt checkpoint: ", 0), 0u) << e.what();
    }
}

TEST(Checkpoint, FeatureCountMismatchNamesBothDims) {
    const auto ck = sample(39, 1);
    try {
        check_feature_count(ck, 36);
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_EQ(std::string(e.what()), "checkpoint expects F=39 features but the dataset has F=36");
    }
    EXPECT_NO_THROW(check_feature_count(ck, 39));
}
