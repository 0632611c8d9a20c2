#include "hsif/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "hsif/csv.hpp"
#include "hsif/hashing.hpp"

namespace hsif {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view expected, std::string_view got) {
    throw UsageError("config." + std::string(key) + ": expected " + std::string(expected) + ", got '" +
                     std::string(got) + "'");
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, "a non-negative integer", v);
    return out;
}

double parse_real(std::string_view key, std::string_view v) {
    const auto d = csv::parse_double(v);
    if (!d) bad_value(key, "a number", v);
    return *d;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, "true or false", v);
}

struct Field {
    std::string key;
    bool is_path;
    std::function<std::string(const PipelineConfig&)> get;
    std::function<void(PipelineConfig&, std::string_view)> set;
};

template <typename T>
Field size_field(const char* key, T PipelineConfig::*member) {
    return {key, false, [member](const PipelineConfig& c) { return std::to_string(c.*member); },
            [member, key](PipelineConfig& c, std::string_view v) { c.*member = static_cast<T>(parse_unsigned(key, v)); }};
}

Field real_field(const char* key, double PipelineConfig::*member) {
    return {key, false, [member](const PipelineConfig& c) { return csv::format_double(c.*member); },
            [member, key](PipelineConfig& c, std::string_view v) { c.*member = parse_real(key, v); }};
}

Field bool_field(const char* key, bool PipelineConfig::*member) {
    return {key, false, [member](const PipelineConfig& c) { return std::string(c.*member ? "true" : "false"); },
            [member, key](PipelineConfig& c, std::string_view v) { c.*member = parse_bool(key, v); }};
}

Field text_field(const char* key, std::string PipelineConfig::*member, bool is_path) {
    return {key, is_path, [member](const PipelineConfig& c) { return c.*member; },
            [member](PipelineConfig& c, std::string_view v) { c.*member = std::string(v); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        text_field("ohlcv", &PipelineConfig::ohlcv, true),
        text_field("tweets", &PipelineConfig::tweets, true),
        text_field("scored", &PipelineConfig::scored, true),
        text_field("out_dir", &PipelineConfig::out_dir, true),
        text_field("catalog", &PipelineConfig::catalog, true),
        size_field("window", &PipelineConfig::window),
        real_field("train_ratio", &PipelineConfig::train_ratio),
        real_field("validation_ratio", &PipelineConfig::validation_ratio),
        real_field("test_ratio", &PipelineConfig::test_ratio),
        real_field("correlation_threshold", &PipelineConfig::correlation_threshold),
        text_field("scaling", &PipelineConfig::scaling, false),
        size_field("hidden", &PipelineConfig::hidden),
        size_field("layers", &PipelineConfig::layers),
        bool_field("bidirectional", &PipelineConfig::bidirectional),
        real_field("dropout", &PipelineConfig::dropout),
        size_field("batch_size", &PipelineConfig::batch_size),
        size_field("max_epochs", &PipelineConfig::max_epochs),
        size_field("patience", &PipelineConfig::patience),
        real_field("min_delta", &PipelineConfig::min_delta),
        real_field("learning_rate", &PipelineConfig::learning_rate),
        bool_field("shuffle", &PipelineConfig::shuffle),
        size_field("seed", &PipelineConfig::seed),
        real_field("commission_rate", &PipelineConfig::commission_rate),
        real_field("initial_capital", &PipelineConfig::initial_capital),
    };
    return table;
}

void require(bool ok, const char* key, const std::string& message) {
    if (!ok) throw UsageError(std::string("config.") + key + ": " + message);
}

}  // namespace

dataset::DatasetConfig PipelineConfig::dataset_config() const {
    dataset::DatasetConfig d;
    d.window_length = window;
    d.ratios = {train_ratio, validation_ratio, test_ratio};
    d.correlation_threshold = correlation_threshold;
    d.scaling = scaling == "paper-literal" ? dataset::ScalingMode::paper_literal : dataset::ScalingMode::train_fit;
    return d;
}

nn::Architecture PipelineConfig::architecture(std::size_t input_dim) const {
    nn::Architecture a;
    a.input_dim = input_dim;
    a.hidden = hidden;
    a.layers = layers;
    a.bidirectional = bidirectional;
    a.dropout = dropout;
    return a;
}

nn::TrainConfig PipelineConfig::train_config() const {
    nn::TrainConfig t;
    t.batch_size = batch_size;
    t.max_epochs = max_epochs;
    t.patience = patience;
    t.min_delta = min_delta;
    t.adam.learning_rate = learning_rate;
    t.shuffle = shuffle;
    return t;
}

eval::TradingConfig PipelineConfig::trading_config() const { return {initial_capital, commission_rate}; }

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value) {
    for (const auto& f : fields()) {
        if (f.key == key) {
            f.set(cfg, value);
            return;
        }
    }
    throw UsageError("config: unknown key '" + std::string(key) + "'");
}

void apply_config_text(PipelineConfig& cfg, std::string_view text) {
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const std::string line = trim(text.substr(pos, end - pos));
        ++line_no;
        pos = end + 1;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config: expected 'key = value' at line " + std::to_string(line_no));
        set_config_value(cfg, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)));
    }
}

void validate(const PipelineConfig& cfg) {
    require(cfg.window >= 1, "window", "must be >= 1");
    require(cfg.train_ratio > 0, "train_ratio", "must be > 0");
    require(cfg.validation_ratio > 0, "validation_ratio", "must be > 0");
    require(cfg.test_ratio > 0, "test_ratio", "must be > 0");
    require(std::abs(cfg.train_ratio + cfg.validation_ratio + cfg.test_ratio - 1.0) <= 1e-9, "train_ratio",
            "split ratios must sum to 1");
    require(cfg.correlation_threshold > 0 && cfg.correlation_threshold < 1, "correlation_threshold",
            "must lie in (0,1)");
    require(cfg.scaling == "train-fit" || cfg.scaling == "paper-literal", "scaling",
            "must be train-fit or paper-literal");
    require(cfg.hidden >= 1, "hidden", "must be >= 1");
    require(cfg.layers >= 1, "layers", "must be >= 1");
    require(cfg.dropout >= 0 && cfg.dropout < 1, "dropout", "must lie in [0,1)");
    require(cfg.batch_size >= 1, "batch_size", "must be >= 1");
    require(cfg.max_epochs >= 1, "max_epochs", "must be >= 1");
    require(cfg.patience >= 1, "patience", "must be >= 1");
    require(cfg.min_delta >= 0, "min_delta", "must be >= 0");
    require(cfg.learning_rate > 0, "learning_rate", "must be > 0");
    require(cfg.commission_rate >= 0 && cfg.commission_rate < 1, "commission_rate", "must lie in [0,1)");
    require(cfg.initial_capital > 0, "initial_capital", "must be > 0");
}

std::string canonical_text(const PipelineConfig& cfg) {
    std::string out;
    for (const auto& f : fields())
        if (!f.is_path) out += f.key + "=" + f.get(cfg) + "\n";
    return out;
}

std::string config_hash(const PipelineConfig& cfg) { return sha256_hex(canonical_text(cfg)); }

PipelineConfig resolve_config(const std::string& config_path, const char* env_seed,
                              const std::vector<std::pair<std::string, std::string>>& overrides) {
    PipelineConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw UsageError("cannot read config file '" + config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        apply_config_text(cfg, ss.str());
        // Relative paths in the file are relative to the file itself.
        const auto base = std::filesystem::path(config_path).parent_path();
        for (auto* p : {&cfg.ohlcv, &cfg.tweets, &cfg.scored, &cfg.out_dir, &cfg.catalog}) {
            if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).lexically_normal().string();
        }
    }
    if (env_seed && *env_seed) {
        try {
            set_config_value(cfg, "seed", env_seed);
        } catch (const UsageError&) {
            throw UsageError(std::string("HSIF_SEED: expected a non-negative integer, got '") + env_seed + "'");
        }
    }
    for (const auto& [k, v] : overrides) set_config_value(cfg, k, v);
    validate(cfg);
    return cfg;
}

}  // namespace hsif
