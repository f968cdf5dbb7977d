#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qganf/ansatz.hpp"
#include "qganf/cli.hpp"
#include "qganf/features.hpp"
#include "qganf/metrics.hpp"

namespace qganf {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

nlohmann::json windows_to_json(const WindowedDataset& ds) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const WindowPair& p : ds.pairs) {
        pairs.push_back({{"past", p.past},
                         {"target", p.target},
                         {"past_norm", p.past_norm},
                         {"target_norm", p.target_norm}});
    }
    return {{"spec",
             {{"b", ds.spec.b},
              {"f", ds.spec.f},
              {"stride", ds.spec.stride},
              {"overlapped", ds.spec.overlapped}}},
            {"scaling", {{"min", ds.scaling.min}, {"max", ds.scaling.max}}},
            {"normalized", ds.normalized},
            {"pairs", pairs}};
}

WindowedDataset windows_from_json(const nlohmann::json& j) {
    WindowedDataset ds;
    ds.spec.b = j.at("spec").at("b").get<int>();
    ds.spec.f = j.at("spec").at("f").get<int>();
    ds.spec.stride = j.at("spec").at("stride").get<int>();
    ds.spec.overlapped = j.at("spec").at("overlapped").get<bool>();
    ds.scaling.min = j.at("scaling").at("min").get<double>();
    ds.scaling.max = j.at("scaling").at("max").get<double>();
    ds.normalized = j.at("normalized").get<bool>();
    for (const auto& jp : j.at("pairs")) {
        WindowPair p;
        p.past = jp.at("past").get<std::vector<double>>();
        p.target = jp.at("target").get<std::vector<double>>();
        p.past_norm = jp.at("past_norm").get<double>();
        p.target_norm = jp.at("target_norm").get<double>();
        ds.pairs.push_back(std::move(p));
    }
    return ds;
}

// Audit norms of the scaled windows, stored alongside the (still scaled) data.
void attach_audit_norms(WindowedDataset& ds) {
    for (WindowPair& p : ds.pairs) {
        p.past_norm = l2_normalize(p.past).second;
        p.target_norm = l2_normalize(p.target).second;
    }
}

PreparedDataset build_prepared(const ExperimentConfig& config) {
    const PriceSeries series = load_csv(config.input_csv);
    const std::vector<double> trend = hp_filter(series.prices, config.hp_lambda);
    auto [train_prices, test_prices] = train_test_split(trend, config.split_ratio);
    const ScalingState scaling = minmax_fit(train_prices);
    const std::vector<double> scaled_train = minmax_apply(train_prices, scaling);
    const std::vector<double> scaled_test = minmax_apply(test_prices, scaling);

    const ModelKind kind = config.model_kind();
    WindowSpec spec{config.b, config.f, config.stride, kind == ModelKind::InvertibleFqgan};

    PreparedDataset out;
    if (kind == ModelKind::InvertibleFqgan) {
        out.train = make_overlapped_windows(scaled_train, config.b, config.f, scaling);
        out.test = make_overlapped_windows(scaled_test, config.b, config.f, scaling);
    } else if (kind == ModelKind::GanTi) {
        const FeatureMatrix features =
            feature_matrix(trend, config.ema_span, config.momentum_lag);
        const std::size_t dropped = trend.size() - features.rows();
        if (train_prices.size() <= dropped + static_cast<std::size_t>(config.b + config.f)) {
            throw DataError("prepare: train split too short after indicator warm-up");
        }
        const std::size_t n_train_rows = train_prices.size() - dropped;
        FeatureMatrix scaled = features;
        for (std::size_t c = 0; c < scaled.values.size(); ++c) {
            auto& col = scaled.values[c];
            if (c == 0) {
                col = minmax_apply(col, scaling);
            } else {
                const std::vector<double> head(col.begin(), col.begin() + n_train_rows);
                col = minmax_apply(col, minmax_fit(head));
            }
        }
        FeatureMatrix train_part, test_part;
        train_part.columns = test_part.columns = scaled.columns;
        for (const auto& col : scaled.values) {
            train_part.values.emplace_back(col.begin(), col.begin() + n_train_rows);
            test_part.values.emplace_back(col.begin() + n_train_rows, col.end());
        }
        out.train = make_feature_windows(train_part, spec, scaling);
        out.test = make_feature_windows(test_part, spec, scaling);
    } else {
        out.train = make_windows(scaled_train, spec, scaling);
        out.test = make_windows(scaled_test, spec, scaling);
    }
    attach_audit_norms(out.train);
    attach_audit_norms(out.test);

    out.provenance = {{"input_csv", config.input_csv},
                      {"model", config.model},
                      {"hp_lambda", config.hp_lambda},
                      {"split_ratio", config.split_ratio},
                      {"stride", config.stride},
                      {"seed", config.seed},
                      {"n_points", series.size()},
                      {"n_train_points", train_prices.size()},
                      {"n_test_points", test_prices.size()},
                      {"n_train_pairs", out.train.pairs.size()},
                      {"n_test_pairs", out.test.pairs.size()}};
    return out;
}

std::string loss_history_csv(const ModelArtifact& art) {
    std::ostringstream out;
    out.precision(17);
    out << "epoch,loss_g,loss_d\n";
    for (std::size_t e = 0; e < art.loss_history.size(); ++e) {
        out << e << ',' << art.loss_history[e].loss_g << ',' << art.loss_history[e].loss_d
            << '\n';
    }
    return out.str();
}

ModelArtifact dispatch_train(const WindowedDataset& train_ds, const TrainConfig& cfg) {
    switch (cfg.kind) {
        case ModelKind::SimpleGan:
            return train_simple_gan(train_ds, cfg);
        case ModelKind::GanTi:
            return train_gan_ti(train_ds, cfg);
        case ModelKind::HybridQgan:
            return train_hybrid_qgan(train_ds, cfg);
        case ModelKind::Fqgan:
            return train_fqgan(l2_normalize_dataset(train_ds), cfg);
        case ModelKind::InvertibleFqgan:
            return train_invertible_fqgan(l2_normalize_dataset(train_ds), cfg);
    }
    throw ConfigError("unknown model kind");
}

WindowedDataset dataset_for_kind(const WindowedDataset& ds, ModelKind kind) {
    if (kind == ModelKind::Fqgan || kind == ModelKind::InvertibleFqgan) {
        return l2_normalize_dataset(ds);
    }
    return ds;
}

}  // namespace

nlohmann::json prepared_to_json(const PreparedDataset& ds) {
    return {{"format_version", 1},
            {"provenance", ds.provenance},
            {"train", windows_to_json(ds.train)},
            {"test", windows_to_json(ds.test)}};
}

PreparedDataset prepared_from_json(const nlohmann::json& j) {
    PreparedDataset ds;
    ds.provenance = j.at("provenance");
    ds.train = windows_from_json(j.at("train"));
    ds.test = windows_from_json(j.at("test"));
    return ds;
}

void cmd_prepare(const ExperimentConfig& config) {
    config.validate();
    if (config.input_csv.empty()) throw ConfigError("prepare: input_csv is required");
    const PreparedDataset ds = build_prepared(config);
    write_file(fs::path(config.out_dir) / "dataset.json", prepared_to_json(ds).dump(2) + "\n");
    write_file(fs::path(config.out_dir) / "provenance.json", ds.provenance.dump(2) + "\n");
}

void cmd_features(const ExperimentConfig& config) {
    config.validate();
    if (config.input_csv.empty()) throw ConfigError("features: input_csv is required");
    const PriceSeries series = load_csv(config.input_csv);
    const FeatureMatrix m =
        feature_matrix(series.prices, config.ema_span, config.momentum_lag);
    write_file(fs::path(config.out_dir) / "features.csv", m.to_csv());
}

void cmd_train(const ExperimentConfig& config) {
    config.validate();
    const fs::path dataset_path = fs::path(config.out_dir) / "dataset.json";
    if (!fs::exists(dataset_path)) {
        throw DataError("train: " + dataset_path.string() +
                        " not found; run the prepare command first");
    }
    const PreparedDataset ds = prepared_from_json(read_json(dataset_path.string()));
    const ModelArtifact art = dispatch_train(ds.train, config.to_train_config());
    write_file(fs::path(config.out_dir) / "model.json", artifact_to_json(art).dump(2) + "\n");
    write_file(fs::path(config.out_dir) / "loss_history.csv", loss_history_csv(art));
}

void cmd_predict(const ExperimentConfig& config, const std::string& artifact_path,
                 const std::string& dataset_path) {
    config.validate();
    const ModelArtifact art = artifact_from_json(read_json(artifact_path));
    const PreparedDataset ds = prepared_from_json(read_json(dataset_path));

    std::ostringstream out;
    out.precision(17);
    const bool invertible = art.kind == ModelKind::InvertibleFqgan;
    out << "split,window_index,horizon_index,predicted_price,true_price";
    if (invertible) out << ",factor";
    out << "\n";

    for (const auto& [split, raw] :
         {std::pair<std::string, const WindowedDataset*>{"train", &ds.train},
          std::pair<std::string, const WindowedDataset*>{"test", &ds.test}}) {
        const WindowedDataset part = dataset_for_kind(*raw, art.kind);
        const auto preds = predict(art, part);
        const auto truths = true_prices(part);
        std::vector<double> factors;
        if (invertible) {
            for (const WindowPair& pair : part.pairs) {
                const auto y_hat = fqgan_readout(art, pair.past);
                std::vector<double> scaled_past(pair.past.size());
                for (std::size_t i = 0; i < pair.past.size(); ++i) {
                    scaled_past[i] = pair.past[i] * pair.past_norm;
                }
                factors.push_back(invertible_recover(y_hat, scaled_past, part.spec.f,
                                                     art.scaling, art.hp_lambda)
                                      .factor);
            }
        }
        for (std::size_t w = 0; w < preds.size(); ++w) {
            for (std::size_t h = 0; h < preds[w].size(); ++h) {
                out << split << ',' << w << ',' << h << ',' << preds[w][h] << ','
                    << truths[w][h];
                if (invertible) out << ',' << factors[w];
                out << '\n';
            }
        }
    }
    write_file(fs::path(config.out_dir) / "predictions.csv", out.str());
}

void cmd_evaluate(const ExperimentConfig& config, const std::string& predictions_path) {
    config.validate();
    std::ifstream in(predictions_path);
    if (!in) throw DataError("evaluate: cannot open " + predictions_path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("evaluate: empty predictions file");
    {
        std::istringstream header(line);
        std::string col;
        std::vector<std::string> cols;
        while (std::getline(header, col, ',')) cols.push_back(col);
        if (cols.size() < 5 || cols[3] != "predicted_price" || cols[4] != "true_price") {
            throw DataError("evaluate: predictions file lacks predicted/true price columns");
        }
    }
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_split;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string split, w, h, pred, truth;
        if (!std::getline(row, split, ',') || !std::getline(row, w, ',') ||
            !std::getline(row, h, ',') || !std::getline(row, pred, ',') ||
            !std::getline(row, truth, ',')) {
            throw DataError("evaluate: malformed row at line " + std::to_string(line_no));
        }
        by_split[split].first.push_back(std::stod(pred));
        by_split[split].second.push_back(std::stod(truth));
    }
    nlohmann::json j;
    for (const auto& [split, data] : by_split) {
        j[split] = {{"rmse", rmse(data.first, data.second)},
                    {"mae", mae(data.first, data.second)},
                    {"r2", r2(data.first, data.second)},
                    {"n", data.first.size()}};
    }
    write_file(fs::path(config.out_dir) / "metrics.json", j.dump(2) + "\n");
}

void cmd_sweep(const ExperimentConfig& config) {
    config.validate();
    if (config.input_csv.empty()) throw ConfigError("sweep: input_csv is required");
    if (config.windows.empty()) throw ConfigError("sweep: window list is empty");
    const PriceSeries series = load_csv(config.input_csv);
    std::vector<ModelKind> kinds;
    for (const std::string& k : config.kinds) kinds.push_back(model_kind_from_string(k));
    const auto rows = window_sweep(series.prices, config.to_train_config(),
                                   config.split_ratio, config.windows, kinds);
    write_file(fs::path(config.out_dir) / "sweep.csv", sweep_to_csv(rows));
    write_file(fs::path(config.out_dir) / "sweep.json", sweep_to_json(rows).dump(2) + "\n");
}

void cmd_resources(const ExperimentConfig& config) {
    config.validate();
    if (config.windows.empty()) throw ConfigError("resources: window list is empty");
    std::ostringstream out;
    out << "b,f,qubits,depth,trainable_params\n";
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [b, f] : config.windows) {
        const AnsatzSpec spec{std::max(1, ceil_log2(b)), config.ansatz_layers};
        const ResourceReport r = resource_report(b, f, spec);
        out << b << ',' << f << ',' << r.qubits << ',' << r.depth << ','
            << r.trainable_params << '\n';
        j.push_back({{"b", b},
                     {"f", f},
                     {"qubits", r.qubits},
                     {"depth", r.depth},
                     {"trainable_params", r.trainable_params}});
    }
    write_file(fs::path(config.out_dir) / "resources.csv", out.str());
    write_file(fs::path(config.out_dir) / "resources.json", j.dump(2) + "\n");
}

}  // namespace qganf
