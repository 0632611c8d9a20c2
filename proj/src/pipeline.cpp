#include "hsif/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hsif/catalog.hpp"
#include "hsif/checkpoint.hpp"
#include "hsif/csv.hpp"
#include "hsif/dataset.hpp"
#include "hsif/evaluation.hpp"
#include "hsif/hashing.hpp"
#include "hsif/marketdata.hpp"
#include "hsif/sentiment.hpp"
#include "hsif/synthetic.hpp"

namespace hsif::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kIngestManifest = "ingest.json";
constexpr const char* kMarket = "market.csv";
constexpr const char* kDaily = "sentiment_daily.csv";
constexpr const char* kTweetsClean = "tweets_clean.csv";
constexpr const char* kDatasetManifest = "dataset.json";
constexpr const char* kFeatures = "features.csv";
constexpr const char* kWindows = "windows.csv";
constexpr const char* kCheckpoint = "checkpoint.json";
constexpr const char* kTraining = "training.json";
constexpr const char* kPredictions = "predictions.csv";
constexpr const char* kMetrics = "metrics.json";
constexpr const char* kEquity = "equity.csv";
constexpr const char* kLedger = "ledger.csv";
constexpr const char* kBacktest = "backtest.json";
constexpr const char* kCurve = "training_curve.csv";
constexpr const char* kReport = "report.json";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

void log(const RunOptions& options, const std::string& line) {
    if (options.log) *options.log << line << '\n';
}

fs::path output_dir(const PipelineConfig& cfg, std::string_view stage) {
    if (cfg.out_dir.empty()) throw UsageError("config.out_dir: required by " + std::string(stage));
    return cfg.out_dir;
}

std::string required_path(const std::string& value, const char* key, std::string_view stage) {
    if (value.empty()) throw UsageError(std::string("config.") + key + ": required by " + std::string(stage));
    return value;
}

// Refuses to replace existing outputs unless forced, then makes sure the directory exists.
void claim_outputs(const fs::path& dir, const std::vector<std::string>& names, const RunOptions& options) {
    if (!options.force) {
        for (const auto& n : names) {
            if (fs::exists(dir / n))
                throw UsageError("refusing to overwrite '" + (dir / n).string() + "'; pass --force to replace it");
        }
    }
    fs::create_directories(dir);
}

void require_artifact(const fs::path& dir, const char* name, const char* stage) {
    if (!fs::exists(dir / name))
        throw UsageError("missing '" + (dir / name).string() + "'; run " + stage + " first");
}

std::string csv_header(const char* artifact, const PipelineConfig& cfg) {
    return "# hsif-artifact v" + std::to_string(kArtifactVersion) + " " + artifact + " config_hash=" +
           config_hash(cfg) + "\n";
}

json manifest(const char* format, const PipelineConfig& cfg) {
    json j;
    j["format"] = format;
    j["format_version"] = kArtifactVersion;
    j["config_hash"] = config_hash(cfg);
    return j;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

json read_manifest(const fs::path& path, const char* format) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error("corrupt artifact '" + path.string() + "': " + e.what());
    }
    if (j.value("format", "") != format) throw Error("'" + path.string() + "' is not a " + format + " file");
    if (j.value("format_version", 0) != kArtifactVersion)
        throw Error("'" + path.string() + "' has unsupported format_version");
    return j;
}

json input_description(const std::string& path) {
    return {{"file", fs::path(path).filename().string()}, {"sha256", sha256_hex(read_file(path))}};
}

fusion::Split parse_split(std::string_view name, std::size_t line) {
    for (auto s : {fusion::Split::train, fusion::Split::validation, fusion::Split::test})
        if (fusion::split_name(s) == name) return s;
    throw ParseError("unknown split '" + std::string(name) + "'", line);
}

Date parse_date_field(const std::string& text, std::size_t line) {
    const auto d = Date::parse(text);
    if (!d) throw ParseError("malformed date '" + text + "'", line);
    return *d;
}

double parse_number_field(const std::string& text, std::size_t line) {
    const auto v = csv::parse_double(text);
    if (!v) throw ParseError("malformed number '" + text + "'", line);
    return *v;
}

int parse_label_field(const std::string& text, std::size_t line) {
    if (text == "0") return 0;
    if (text == "1") return 1;
    throw ParseError("label must be 0 or 1, got '" + text + "'", line);
}

nn::SequenceData sequences(const fusion::WindowedDataset& ds, fusion::Split s) {
    nn::SequenceData out;
    for (auto i : ds.indices(s)) {
        out.windows.push_back(ds.window_matrix(i));
        out.labels.push_back(ds.windows[i].label);
    }
    return out;
}

json split_summary(const fusion::WindowedDataset& ds, fusion::Split s) {
    const auto idx = ds.indices(s);
    json j = {{"windows", idx.size()}};
    if (!idx.empty()) {
        j["first_anchor"] = ds.dates[ds.windows[idx.front()].anchor_row].to_string();
        j["last_anchor"] = ds.dates[ds.windows[idx.back()].anchor_row].to_string();
    }
    return j;
}

json scaler_to_json(const fusion::ScalerParams& p) {
    return {{"names", p.names}, {"min", p.min}, {"max", p.max}};
}

fusion::ScalerParams scaler_from_json(const json& j) {
    fusion::ScalerParams p;
    p.names = j.at("names").get<std::vector<std::string>>();
    p.min = j.at("min").get<std::vector<double>>();
    p.max = j.at("max").get<std::vector<double>>();
    if (p.min.size() != p.names.size() || p.max.size() != p.names.size())
        throw Error("corrupt dataset manifest: scaler sizes disagree");
    return p;
}

struct Prediction {
    Date date;
    int label = 0;
    double p_down = 0.0;
    double p_up = 0.0;
    int prediction = 0;
    double close = 0.0;
};

std::vector<Prediction> read_predictions(const fs::path& path) {
    const auto records = csv::read(read_file(path), {.skip_comments = true});
    csv::expect_header(records, {"date", "label", "p_down", "p_up", "prediction", "close"});
    std::vector<Prediction> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.fields.size() != 6) throw ParseError("expected 6 fields", r.line);
        out.push_back({parse_date_field(r.fields[0], r.line), parse_label_field(r.fields[1], r.line),
                       parse_number_field(r.fields[2], r.line), parse_number_field(r.fields[3], r.line),
                       parse_label_field(r.fields[4], r.line), parse_number_field(r.fields[5], r.line)});
    }
    return out;
}

std::string ledger_csv(const eval::TradeLedger& ledger) {
    std::string out = "date,prediction,action,close,units,cash,commission,equity\n";
    for (const auto& e : ledger.entries) {
        out += e.date.to_string() + "," + std::to_string(e.prediction) + "," + std::string(eval::action_name(e.action)) +
               "," + csv::format_double(e.close) + "," + csv::format_double(e.units) + "," +
               csv::format_double(e.cash) + "," + csv::format_double(e.commission) + "," +
               csv::format_double(e.equity) + "\n";
    }
    return out;
}

}  // namespace

std::string default_out_dir() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &utc);
    return (fs::path("runs") / buf).string();
}

void ingest(const PipelineConfig& cfg, const RunOptions& options) {
    const auto dir = output_dir(cfg, "ingest");
    const auto ohlcv_path = required_path(cfg.ohlcv, "ohlcv", "ingest");
    const auto scored_path = required_path(cfg.scored, "scored", "ingest");
    std::vector<std::string> outputs = {kMarket, kDaily, kIngestManifest};
    if (!cfg.tweets.empty()) outputs.push_back(kTweetsClean);
    claim_outputs(dir, outputs, options);

    const auto series = marketdata::parse_ohlcv(read_file(ohlcv_path));
    if (series.empty()) throw Error("'" + ohlcv_path + "' holds no candles");
    const auto gaps = marketdata::validate_gaps(series);
    for (const auto& g : gaps) log(options, "warning: no candle for " + g.to_string());

    const auto scored = sentiment::ingest_scores(read_file(scored_path));
    std::vector<sentiment::ScoredTweet> in_span;
    for (const auto& s : scored)
        if (s.date >= series.front().date && s.date <= series.back().date) in_span.push_back(s);
    const auto daily = sentiment::aggregate_daily(in_span, series.front().date, series.back().date);

    json j = manifest("hsif-ingest", cfg);
    j["inputs"] = {{"ohlcv", input_description(ohlcv_path)}, {"scored", input_description(scored_path)}};
    if (!cfg.tweets.empty()) {
        auto tweets = sentiment::parse_tweets(read_file(cfg.tweets));
        for (auto& t : tweets) t.text = sentiment::clean_tweet(t.text);
        // Plain date,text so the external scorer can read it directly.
        write_file(dir / kTweetsClean, sentiment::serialize_tweets(tweets));
        j["inputs"]["tweets"] = input_description(cfg.tweets);
        j["tweets_cleaned"] = tweets.size();
    }
    j["candles"] = series.size();
    j["first_date"] = series.front().date.to_string();
    j["last_date"] = series.back().date.to_string();
    json gap_list = json::array();
    for (const auto& g : gaps) gap_list.push_back(g.to_string());
    j["gaps"] = gap_list;
    j["scored_tweets"] = scored.size();
    j["scored_outside_span"] = scored.size() - in_span.size();
    j["sentiment_days"] = daily.size();

    write_file(dir / kMarket, csv_header(kMarket, cfg) + marketdata::serialize_ohlcv(series));
    write_file(dir / kDaily, csv_header(kDaily, cfg) + sentiment::serialize_daily(daily));
    write_file(dir / kIngestManifest, dump(j));
    log(options, "ingest: " + std::to_string(series.size()) + " candles, " + std::to_string(in_span.size()) +
                     " scored tweets, " + std::to_string(gaps.size()) + " gaps");
}

void build_dataset(const PipelineConfig& cfg, const RunOptions& options) {
    const auto dir = output_dir(cfg, "build-dataset");
    require_artifact(dir, kIngestManifest, "ingest");
    read_manifest(dir / kIngestManifest, "hsif-ingest");
    claim_outputs(dir, {kFeatures, kWindows, kDatasetManifest}, options);

    const auto series = marketdata::parse_ohlcv(read_file(dir / kMarket));
    const auto daily = sentiment::parse_daily(read_file(dir / kDaily));
    const auto catalog = cfg.catalog.empty() ? indicators::default_catalog()
                                             : indicators::IndicatorCatalog::parse(read_file(cfg.catalog));
    const auto hard = indicators::compute_catalog(series, catalog);
    const auto built = dataset::build_dataset(hard, daily, cfg.dataset_config());
    const auto& ds = built.data;
    for (const auto& w : built.warnings) log(options, "warning: " + w);

    FeatureFrame frame(ds.dates);
    for (std::size_t c = 0; c < ds.feature_count(); ++c) {
        OptionalSeries values(ds.dates.size());
        for (std::size_t r = 0; r < ds.dates.size(); ++r) values[r] = ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        frame.add_column(ds.feature_names[c], std::move(values));
    }

    std::string windows = "anchor_date,label_date,label,split,close\n";
    for (const auto& w : ds.windows) {
        windows += ds.dates[w.anchor_row].to_string() + "," + ds.dates[w.anchor_row + 1].to_string() + "," +
                   std::to_string(w.label) + "," + std::string(fusion::split_name(w.split)) + "," +
                   csv::format_double(built.closes[w.anchor_row]) + "\n";
    }

    json j = manifest("hsif-dataset", cfg);
    j["catalog"] = {{"source", cfg.catalog.empty() ? std::string("default") : fs::path(cfg.catalog).filename().string()},
                    {"hash", catalog.hash()},
                    {"text", catalog.to_text()}};
    if (cfg.catalog.empty()) j["catalog"]["version"] = indicators::kDefaultCatalogVersion;
    j["scaling"] = cfg.scaling;
    j["window_length"] = ds.window_length;
    j["correlation_threshold"] = cfg.correlation_threshold;
    j["ratios"] = {{"train", cfg.train_ratio}, {"validation", cfg.validation_ratio}, {"test", cfg.test_ratio}};
    j["warmup_rows"] = built.warmup_rows;
    j["rows"] = ds.dates.size();
    j["fit_rows"] = built.fit_rows;
    j["hard_features_before_pruning"] = built.hard_width_before;
    j["hard_features_after_pruning"] = built.hard_width_after;
    j["feature_count"] = ds.feature_count();
    j["feature_names"] = ds.feature_names;
    json dropped = json::array();
    for (const auto& d : built.dropped) dropped.push_back({{"name", d.name}, {"partner", d.partner}, {"r", d.r}});
    j["dropped"] = dropped;
    j["scaler"] = scaler_to_json(built.scaler);
    j["splits"] = {{"train", split_summary(ds, fusion::Split::train)},
                   {"validation", split_summary(ds, fusion::Split::validation)},
                   {"test", split_summary(ds, fusion::Split::test)}};
    j["warnings"] = built.warnings;

    write_file(dir / kFeatures, csv_header(kFeatures, cfg) + frame.to_csv());
    write_file(dir / kWindows, csv_header(kWindows, cfg) + windows);
    write_file(dir / kDatasetManifest, dump(j));
    log(options, "build-dataset: F=" + std::to_string(ds.feature_count()) + " (hard " +
                     std::to_string(built.hard_width_before) + " -> " + std::to_string(built.hard_width_after) +
                     "), windows " + std::to_string(ds.count(fusion::Split::train)) + "/" +
                     std::to_string(ds.count(fusion::Split::validation)) + "/" +
                     std::to_string(ds.count(fusion::Split::test)));
}

StoredDataset load_dataset(const fs::path& dir) {
    require_artifact(dir, kDatasetManifest, "build-dataset");
    const json j = read_manifest(dir / kDatasetManifest, "hsif-dataset");
    StoredDataset out;
    out.scaler = scaler_from_json(j.at("scaler"));
    out.catalog_hash = j.at("catalog").at("hash").get<std::string>();

    const auto frame = FeatureFrame::from_csv(read_file(dir / kFeatures));
    auto& ds = out.data;
    ds.feature_names = frame.names();
    if (ds.feature_names != j.at("feature_names").get<std::vector<std::string>>())
        throw Error("features.csv columns disagree with dataset.json");
    ds.dates = frame.dates();
    ds.window_length = j.at("window_length").get<std::size_t>();
    ds.features.resize(static_cast<Eigen::Index>(frame.rows()), static_cast<Eigen::Index>(frame.width()));
    for (std::size_t r = 0; r < frame.rows(); ++r)
        for (std::size_t c = 0; c < frame.width(); ++c)
            ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = frame.at(r, c);

    std::map<Date, std::size_t> row_of;
    for (std::size_t r = 0; r < ds.dates.size(); ++r) row_of[ds.dates[r]] = r;
    const auto records = csv::read(read_file(dir / kWindows), {.skip_comments = true});
    csv::expect_header(records, {"anchor_date", "label_date", "label", "split", "close"});
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.fields.size() != 5) throw ParseError("expected 5 fields", rec.line);
        const auto it = row_of.find(parse_date_field(rec.fields[0], rec.line));
        if (it == row_of.end()) throw ParseError("anchor date not in features.csv", rec.line);
        if (it->second + 1 < ds.window_length || it->second + 1 >= ds.dates.size())
            throw ParseError("anchor date leaves no room for the window", rec.line);
        ds.windows.push_back({it->second, parse_label_field(rec.fields[2], rec.line),
                              parse_split(rec.fields[3], rec.line)});
        out.anchor_closes.push_back(parse_number_field(rec.fields[4], rec.line));
    }
    return out;
}

void train(const PipelineConfig& cfg, const RunOptions& options) {
    const auto dir = output_dir(cfg, "train");
    const auto stored = load_dataset(dir);
    claim_outputs(dir, {kCheckpoint, kTraining}, options);
    const auto& ds = stored.data;
    if (ds.window_length != cfg.window)
        throw UsageError("config.window: dataset was built with T=" + std::to_string(ds.window_length) +
                         " but the config asks for T=" + std::to_string(cfg.window) + "; rerun build-dataset");

    const auto arch = cfg.architecture(ds.feature_count());
    const auto result = nn::train(arch, sequences(ds, fusion::Split::train), sequences(ds, fusion::Split::validation),
                                  cfg.train_config(), cfg.seed);
    const auto& rep = result.report;

    nn::Checkpoint ck;
    ck.params = result.params;
    ck.optimizer = result.optimizer;
    ck.scaler = stored.scaler;
    ck.feature_names = ds.feature_names;
    ck.catalog_hash = stored.catalog_hash;
    ck.config_hash = config_hash(cfg);
    ck.seed = cfg.seed;
    ck.best_epoch = rep.best_epoch;
    ck.window_length = ds.window_length;

    json j = manifest("hsif-training", cfg);
    j["seed"] = cfg.seed;
    j["parameter_count"] = result.params.parameter_count();
    j["epochs_run"] = rep.train_loss.size();
    j["best_epoch"] = rep.best_epoch;
    j["stop_reason"] = rep.stop_reason;
    j["train_loss"] = rep.train_loss;
    j["val_loss"] = rep.val_loss;
    j["val_accuracy"] = rep.val_accuracy;

    write_file(dir / kCheckpoint, nn::checkpoint_to_json(ck));
    write_file(dir / kTraining, dump(j));
    log(options, "train: " + std::to_string(rep.train_loss.size()) + " epochs (" + rep.stop_reason + "), best epoch " +
                     std::to_string(rep.best_epoch) + ", val loss " +
                     csv::format_double(rep.val_loss[rep.best_epoch - 1]));
}

void evaluate(const PipelineConfig& cfg, const RunOptions& options) {
    const auto dir = output_dir(cfg, "evaluate");
    require_artifact(dir, kCheckpoint, "train");
    const auto stored = load_dataset(dir);
    const auto ck = nn::checkpoint_from_json(read_file(dir / kCheckpoint));
    claim_outputs(dir, {kPredictions, kMetrics}, options);
    const auto& ds = stored.data;
    nn::check_feature_count(ck, ds.feature_count());
    if (ck.feature_names != ds.feature_names) throw Error("checkpoint feature names differ from the dataset");
    if (ck.window_length != ds.window_length)
        throw Error("checkpoint expects T=" + std::to_string(ck.window_length) + " but the dataset has T=" +
                    std::to_string(ds.window_length));

    const auto test = ds.indices(fusion::Split::test);
    if (test.empty()) throw Error("empty test split; nothing to evaluate");
    const auto set = sequences(ds, fusion::Split::test);
    const auto probs = nn::predict_proba(ck.params, set.windows);

    std::string csv_text = "date,label,p_down,p_up,prediction,close\n";
    std::vector<int> preds;
    std::vector<double> p_up;
    for (std::size_t k = 0; k < test.size(); ++k) {
        const auto& w = ds.windows[test[k]];
        preds.push_back(nn::predicted_label(probs[k]));
        p_up.push_back(probs[k][1]);
        csv_text += ds.dates[w.anchor_row].to_string() + "," + std::to_string(w.label) + "," +
                    csv::format_double(probs[k][0]) + "," + csv::format_double(probs[k][1]) + "," +
                    std::to_string(preds.back()) + "," + csv::format_double(stored.anchor_closes[test[k]]) + "\n";
    }

    const auto counts = eval::confusion(set.labels, preds);
    const auto rep = eval::classification_report(counts);
    json j = manifest("hsif-metrics", cfg);
    j["split"] = "test";
    j["windows"] = test.size();
    j["best_epoch"] = ck.best_epoch;
    j["confusion"] = {{"tp", counts.tp}, {"fp", counts.fp}, {"tn", counts.tn}, {"fn", counts.fn}};
    j["accuracy"] = rep.accuracy;
    j["precision"] = rep.precision;
    j["recall"] = rep.recall;
    j["f1"] = rep.f1;
    j["mcc"] = rep.mcc;
    if (counts.tp + counts.fn == 0 || counts.tn + counts.fp == 0) {
        j["auc"] = nullptr;
        j["auc_note"] = "test split holds a single class";
    } else {
        j["auc"] = eval::roc_auc(set.labels, p_up);
    }

    write_file(dir / kPredictions, csv_header(kPredictions, cfg) + csv_text);
    write_file(dir / kMetrics, dump(j));
    log(options, "evaluate: " + std::to_string(test.size()) + " test windows, accuracy " +
                     csv::format_double(rep.accuracy) + ", mcc " + csv::format_double(rep.mcc));
}

void backtest(const PipelineConfig& cfg, const RunOptions& options) {
    const auto dir = output_dir(cfg, "backtest");
    require_artifact(dir, kPredictions, "evaluate");
    const auto predictions = read_predictions(dir / kPredictions);
    claim_outputs(dir, {kEquity, kLedger, kBacktest}, options);

    std::vector<Date> dates;
    std::vector<double> closes;
    std::vector<int> preds;
    for (const auto& p : predictions) {
        dates.push_back(p.date);
        closes.push_back(p.close);
        preds.push_back(p.prediction);
    }
    const auto trading = cfg.trading_config();
    const auto strategy = eval::simulate_trading(closes, preds, trading, dates);
    const auto hold = eval::buy_and_hold(closes, trading, dates);

    json j = manifest("hsif-backtest", cfg);
    j["days"] = predictions.size();
    j["first_date"] = dates.front().to_string();
    j["last_date"] = dates.back().to_string();
    j["initial_capital"] = trading.initial_capital;
    j["commission_rate"] = trading.commission_rate;
    j["strategy"] = {{"final_equity", strategy.final_equity()},
                     {"return", strategy.final_equity() / trading.initial_capital - 1.0},
                     {"trades", strategy.trades()},
                     {"total_commission", strategy.total_commission()}};
    j["buy_and_hold"] = {{"final_equity", hold.final_equity()},
                         {"return", hold.final_equity() / trading.initial_capital - 1.0}};

    write_file(dir / kEquity, csv_header(kEquity, cfg) + eval::equity_csv(strategy, hold));
    write_file(dir / kLedger, csv_header(kLedger, cfg) + ledger_csv(strategy));
    write_file(dir / kBacktest, dump(j));
    log(options, "backtest: strategy " + csv::format_double(strategy.final_equity()) + ", buy-and-hold " +
                     csv::format_double(hold.final_equity()) + ", " + std::to_string(strategy.trades()) + " trades");
}

void report(const PipelineConfig& cfg, const RunOptions& options) {
    const auto dir = output_dir(cfg, "report");
    require_artifact(dir, kDatasetManifest, "build-dataset");
    require_artifact(dir, kTraining, "train");
    require_artifact(dir, kMetrics, "evaluate");
    require_artifact(dir, kBacktest, "backtest");
    const json dataset = read_manifest(dir / kDatasetManifest, "hsif-dataset");
    const json training = read_manifest(dir / kTraining, "hsif-training");
    const json metrics = read_manifest(dir / kMetrics, "hsif-metrics");
    const json backtest_summary = read_manifest(dir / kBacktest, "hsif-backtest");
    claim_outputs(dir, {kCurve, kReport}, options);

    const auto train_loss = training.at("train_loss").get<std::vector<double>>();
    const auto val_loss = training.at("val_loss").get<std::vector<double>>();
    const auto val_accuracy = training.at("val_accuracy").get<std::vector<double>>();
    if (val_loss.size() != train_loss.size() || val_accuracy.size() != train_loss.size())
        throw Error("corrupt training.json: per-epoch series differ in length");
    std::string curve = "epoch,train_loss,val_loss,val_accuracy\n";
    for (std::size_t e = 0; e < train_loss.size(); ++e) {
        curve += std::to_string(e + 1) + "," + csv::format_double(train_loss[e]) + "," +
                 csv::format_double(val_loss[e]) + "," + csv::format_double(val_accuracy[e]) + "\n";
    }
    write_file(dir / kCurve, csv_header(kCurve, cfg) + curve);

    json j = manifest("hsif-report", cfg);
    j["dataset"] = {{"feature_count", dataset.at("feature_count")},
                    {"window_length", dataset.at("window_length")},
                    {"scaling", dataset.at("scaling")},
                    {"splits", dataset.at("splits")},
                    {"catalog_hash", dataset.at("catalog").at("hash")}};
    j["training"] = {{"epochs_run", training.at("epochs_run")},
                     {"best_epoch", training.at("best_epoch")},
                     {"stop_reason", training.at("stop_reason")},
                     {"seed", training.at("seed")}};
    j["metrics"] = metrics;
    j["metrics"].erase("format");
    j["metrics"].erase("format_version");
    j["metrics"].erase("config_hash");
    j["backtest"] = {{"strategy", backtest_summary.at("strategy")},
                     {"buy_and_hold", backtest_summary.at("buy_and_hold")}};
    json artifacts = json::object();
    for (const char* name : {kDatasetManifest, kCheckpoint, kMetrics, kEquity, kCurve}) {
        if (fs::exists(dir / name)) artifacts[name] = sha256_hex(read_file(dir / name));
    }
    j["artifact_sha256"] = artifacts;
    write_file(dir / kReport, dump(j));
    log(options, "report: wrote " + std::string(kCurve) + " and " + kReport);
}

void run_stage(std::string_view stage, const PipelineConfig& cfg, const RunOptions& options) {
    if (stage == "all") {
        for (const auto& s : kStages) run_stage(s, cfg, options);
        return;
    }
    if (stage == "ingest") return ingest(cfg, options);
    if (stage == "build-dataset") return build_dataset(cfg, options);
    if (stage == "train") return train(cfg, options);
    if (stage == "evaluate") return evaluate(cfg, options);
    if (stage == "backtest") return backtest(cfg, options);
    if (stage == "report") return report(cfg, options);
    throw UsageError("unknown stage '" + std::string(stage) + "'");
}

void write_synthetic_inputs(const fs::path& dir, std::size_t days, std::uint64_t seed, bool force) {
    RunOptions options;
    options.force = force;
    claim_outputs(dir, {"prices.csv", "tweets.csv", "scored.csv"}, options);
    const auto series = synthetic::random_walk(days, seed);
    const auto corpus = synthetic::tweet_corpus(series, seed + 1);
    std::string scored = "date,p_pos,p_neu,p_neg\n";
    for (const auto& s : corpus.scored) {
        scored += s.date.to_string() + "," + csv::format_double(s.p_pos) + "," + csv::format_double(s.p_neu) + "," +
                  csv::format_double(s.p_neg) + "\n";
    }
    write_file(dir / "prices.csv", marketdata::serialize_ohlcv(series));
    write_file(dir / "tweets.csv", sentiment::serialize_tweets(corpus.tweets));
    write_file(dir / "scored.csv", scored);
}

}  // namespace hsif::pipeline
