// qganf: quantum-GAN stock-forecasting pipeline driver.
//
// Subcommands: prepare, features, train, predict, evaluate, sweep, resources.
// Exit codes: 0 success, 2 config error, 3 data error, 4 training abort.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qganf/cli.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string seed;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path, "key=value config file");
    if (config_required) opt->required();
    cmd->add_option("--seed", args.seed, "override the RNG seed");
    cmd->add_option("--out", args.out_dir, "override the output directory");
    cmd->add_option("--set", args.overrides,
                    "config override key=value; accepted keys: " + qganf::config_key_help());
}

qganf::ExperimentConfig resolve(const CommonArgs& args) {
    qganf::ExperimentConfig config;
    if (!args.config_path.empty()) config = qganf::parse_config_file(args.config_path);
    for (const std::string& kv : args.overrides) qganf::apply_override(config, kv);
    if (!args.seed.empty()) qganf::apply_override(config, "seed=" + args.seed);
    if (!args.out_dir.empty()) qganf::apply_override(config, "out_dir=" + args.out_dir);
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-GAN time-series forecasting toolkit"};
    app.require_subcommand(1);

    CommonArgs prepare_args, features_args, train_args, predict_args, evaluate_args,
        sweep_args, resources_args;
    std::string artifact_path, dataset_path, predictions_path;

    add_common(app.add_subcommand("prepare", "build the windowed dataset"), prepare_args,
               true);
    add_common(app.add_subcommand("features", "emit the technical-indicator matrix"),
               features_args, true);
    add_common(app.add_subcommand("train", "train the configured model"), train_args, true);
    auto* predict_cmd = app.add_subcommand("predict", "predict with a trained artifact");
    add_common(predict_cmd, predict_args, true);
    predict_cmd->add_option("--artifact", artifact_path, "model artifact path");
    predict_cmd->add_option("--dataset", dataset_path, "prepared dataset path");
    auto* evaluate_cmd = app.add_subcommand("evaluate", "metrics from a predictions file");
    add_common(evaluate_cmd, evaluate_args, true);
    evaluate_cmd->add_option("--predictions", predictions_path, "predictions CSV path");
    add_common(app.add_subcommand("sweep", "window-size sweep over model kinds"), sweep_args,
               true);
    add_common(app.add_subcommand("resources", "quantum resource accounting per window"),
               resources_args, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("prepare")) {
            qganf::cmd_prepare(resolve(prepare_args));
        } else if (app.got_subcommand("features")) {
            qganf::cmd_features(resolve(features_args));
        } else if (app.got_subcommand("train")) {
            qganf::cmd_train(resolve(train_args));
        } else if (app.got_subcommand("predict")) {
            const auto config = resolve(predict_args);
            if (artifact_path.empty()) artifact_path = config.out_dir + "/model.json";
            if (dataset_path.empty()) dataset_path = config.out_dir + "/dataset.json";
            qganf::cmd_predict(config, artifact_path, dataset_path);
        } else if (app.got_subcommand("evaluate")) {
            const auto config = resolve(evaluate_args);
            if (predictions_path.empty()) {
                predictions_path = config.out_dir + "/predictions.csv";
            }
            qganf::cmd_evaluate(config, predictions_path);
        } else if (app.got_subcommand("sweep")) {
            qganf::cmd_sweep(resolve(sweep_args));
        } else if (app.got_subcommand("resources")) {
            qganf::cmd_resources(resolve(resources_args));
        }
    } catch (const qganf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qganf::TrainError& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return 4;
    } catch (const qganf::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
