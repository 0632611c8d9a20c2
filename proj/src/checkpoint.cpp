#include "hsif/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include "hsif/errors.hpp"

namespace hsif::nn {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Fills `m`, whose shape is already set, from nested lists of the same shape.
void matrix_from_json(const json& j, Matrix& m, const std::string& what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(m.rows()))
        throw Error("corrupt checkpoint: " + what + " has wrong row count");
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(m.cols()))
            throw Error("corrupt checkpoint: " + what + " has wrong column count");
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const auto& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw Error("corrupt checkpoint: " + what + " holds a non-number");
            m(r, c) = v.get<double>();
        }
    }
}

json tensors_to_json(const NetworkParams& p) {
    json out = json::array();
    for (const auto* t : p.tensors()) out.push_back(matrix_to_json(*t));
    return out;
}

void tensors_from_json(const json& j, NetworkParams& p, const std::string& what) {
    auto ts = p.tensors();
    if (!j.is_array() || j.size() != ts.size()) throw Error("corrupt checkpoint: " + what + " has wrong tensor count");
    for (std::size_t i = 0; i < ts.size(); ++i) matrix_from_json(j[i], *ts[i], what + "[" + std::to_string(i) + "]");
}

json arch_to_json(const Architecture& a) {
    return {{"input_dim", a.input_dim}, {"hidden", a.hidden}, {"layers", a.layers},
            {"bidirectional", a.bidirectional}, {"dropout", a.dropout}};
}

Architecture arch_from_json(const json& j) {
    Architecture a;
    a.input_dim = j.at("input_dim").get<std::size_t>();
    a.hidden = j.at("hidden").get<std::size_t>();
    a.layers = j.at("layers").get<std::size_t>();
    a.bidirectional = j.at("bidirectional").get<bool>();
    a.dropout = j.at("dropout").get<double>();
    return a;
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ck) {
    json j;
    j["format"] = "hsif-checkpoint";
    j["format_version"] = kCheckpointVersion;
    j["config_hash"] = ck.config_hash;
    j["catalog_hash"] = ck.catalog_hash;
    j["seed"] = ck.seed;
    j["best_epoch"] = ck.best_epoch;
    j["window_length"] = ck.window_length;
    j["feature_names"] = ck.feature_names;
    j["architecture"] = arch_to_json(ck.params.arch);
    j["weights"] = tensors_to_json(ck.params);
    j["optimizer"] = {{"step", ck.optimizer.step},
                      {"m", tensors_to_json(ck.optimizer.m)},
                      {"v", tensors_to_json(ck.optimizer.v)}};
    j["scaler"] = {{"names", ck.scaler.names}, {"min", ck.scaler.min}, {"max", ck.scaler.max}};
    return j.dump(1) + "\n";
}

Checkpoint checkpoint_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception&) {
        throw Error("corrupt checkpoint");
    }
    try {
        if (!j.is_object() || j.value("format", "") != "hsif-checkpoint") throw Error("corrupt checkpoint");
        const int version = j.at("format_version").get<int>();
        if (version != kCheckpointVersion) throw Error("unsupported checkpoint version " + std::to_string(version));

        Checkpoint ck;
        ck.config_hash = j.at("config_hash").get<std::string>();
        ck.catalog_hash = j.at("catalog_hash").get<std::string>();
        ck.seed = j.at("seed").get<std::uint64_t>();
        ck.best_epoch = j.at("best_epoch").get<std::size_t>();
        ck.window_length = j.at("window_length").get<std::size_t>();
        ck.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        const Architecture arch = arch_from_json(j.at("architecture"));
        try {
            ck.params = init_params(arch, 0);
        } catch (const InvalidArgument& e) {
            throw Error(std::string("corrupt checkpoint: ") + e.what());
        }
        if (ck.feature_names.size() != arch.input_dim)
            throw Error("corrupt checkpoint: feature list does not match input dimension");
        tensors_from_json(j.at("weights"), ck.params, "weights");
        ck.optimizer = adam_init(ck.params);
        ck.optimizer.step = j.at("optimizer").at("step").get<std::uint64_t>();
        tensors_from_json(j.at("optimizer").at("m"), ck.optimizer.m, "optimizer.m");
        tensors_from_json(j.at("optimizer").at("v"), ck.optimizer.v, "optimizer.v");
        const auto& s = j.at("scaler");
        ck.scaler.names = s.at("names").get<std::vector<std::string>>();
        ck.scaler.min = s.at("min").get<std::vector<double>>();
        ck.scaler.max = s.at("max").get<std::vector<double>>();
        if (ck.scaler.names.size() != ck.scaler.min.size() || ck.scaler.names.size() != ck.scaler.max.size())
            throw Error("corrupt checkpoint: scaler arrays differ in length");
        return ck;
    } catch (const json::exception& e) {
        throw Error(std::string("corrupt checkpoint: ") + e.what());
    }
}

void check_feature_count(const Checkpoint& ck, std::size_t dataset_features) {
    const std::size_t expected = ck.params.arch.input_dim;
    if (expected != dataset_features) {
        throw InvalidArgument("checkpoint expects F=" + std::to_string(expected) + " features but the dataset has F=" +
                              std::to_string(dataset_features));
    }
}

}  // namespace hsif::nn
