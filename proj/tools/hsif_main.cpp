// hsif: command-line driver for the price-movement pipeline.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsif/config.hpp"
#include "hsif/pipeline.hpp"

namespace {

std::string flag_name(std::string key) {
    for (auto& c : key)
        if (c == '_') c = '-';
    return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid sentiment/indicator crypto price-movement pipeline"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string config_path;
    bool force = false;
    bool quiet = false;
    // Values given on the command line, applied over the config file and HSIF_SEED.
    std::map<std::string, std::string> values;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Key = value config file");
        sub->add_flag("--force", force, "Replace artifacts already present in the output directory");
        sub->add_flag("-q,--quiet", quiet, "Suppress progress lines");
        for (const auto& key : hsif::config_keys())
            sub->add_option(flag_name(key), values[key], "Override config key '" + key + "'");
    };

    std::vector<std::string> stages = hsif::pipeline::kStages;
    stages.push_back("all");
    for (const auto& stage : stages) {
        auto* sub = app.add_subcommand(stage, stage == "all" ? "Run every stage in order" : "Run the " + stage + " stage");
        add_common(sub);
    }

    std::string synth_dir;
    std::size_t synth_days = 460;
    std::uint64_t synth_seed = 42;
    auto* synth = app.add_subcommand("synth", "Write a synthetic prices/tweets/scored fixture");
    synth->add_option("dir", synth_dir, "Destination directory")->required();
    synth->add_option("--days", synth_days, "Number of daily candles")->check(CLI::PositiveNumber);
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_flag("--force", force, "Replace existing files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) {
            hsif::pipeline::write_synthetic_inputs(synth_dir, synth_days, synth_seed, force);
            return 0;
        }
        auto* sub = app.get_subcommands().front();
        std::vector<std::pair<std::string, std::string>> overrides;
        for (const auto& key : hsif::config_keys())
            if (sub->count(flag_name(key))) overrides.emplace_back(key, values[key]);

        auto cfg = hsif::resolve_config(config_path, std::getenv("HSIF_SEED"), overrides);
        const std::string stage = sub->get_name();
        if (cfg.out_dir.empty() && (stage == "ingest" || stage == "all")) {
            cfg.out_dir = hsif::pipeline::default_out_dir();
            std::cerr << "hsif: writing artifacts to " << cfg.out_dir << '\n';
        }
        hsif::pipeline::RunOptions options;
        options.force = force;
        options.log = quiet ? nullptr : &std::cerr;
        hsif::pipeline::run_stage(stage, cfg, options);
        return 0;
    } catch (const hsif::UsageError& e) {
        std::cerr << "hsif: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hsif: error: " << e.what() << '\n';
        return 1;
    }
}
