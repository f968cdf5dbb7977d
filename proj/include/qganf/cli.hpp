// cli.hpp
// Experiment configuration and the command implementations behind the
// qganf tool.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qganf/engines.hpp"

namespace qganf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value configuration; unknown keys are rejected and the whole
// config is validated before any work starts.
struct ExperimentConfig {
    std::string input_csv;
    std::string out_dir = "out";
    double hp_lambda = 1600.0;
    double split_ratio = 0.8;
    int b = 3;
    int f = 1;
    int stride = 1;
    std::string model = "simple_gan";
    int epochs = 150;
    int batch_size = 128;
    double gen_lr = 0.00016;
    double disc_lr = 0.00016;
    int noise_dim = -1;  // -1 resolves to 8 for classical generators, 0 for quantum
    int ansatz_layers = 3;
    std::uint64_t seed = 42;
    int ema_span = 12;
    int momentum_lag = 10;
    std::vector<std::pair<int, int>> windows = {{4, 2}, {8, 4}, {16, 8}, {32, 16}};
    std::vector<std::string> kinds = {"simple_gan", "fqgan"};

    ModelKind model_kind() const;
    int resolved_noise_dim() const;
    TrainConfig to_train_config() const;
    void validate() const;
};

ExperimentConfig parse_config_file(const std::string& path);
void apply_override(ExperimentConfig& config, const std::string& key_value);

// Enumerates every accepted config key, for --help and error messages.
std::string config_key_help();

// Commands. Each writes only under config.out_dir and throws ConfigError,
// DataError or TrainError; the tool maps those to exit codes 2, 3 and 4.
void cmd_prepare(const ExperimentConfig& config);
void cmd_features(const ExperimentConfig& config);
void cmd_train(const ExperimentConfig& config);
void cmd_predict(const ExperimentConfig& config, const std::string& artifact_path,
                 const std::string& dataset_path);
void cmd_evaluate(const ExperimentConfig& config, const std::string& predictions_path);
void cmd_sweep(const ExperimentConfig& config);
void cmd_resources(const ExperimentConfig& config);

// Dataset file round trip, shared by prepare/train/predict.
struct PreparedDataset {
    WindowedDataset train;
    WindowedDataset test;
    nlohmann::json provenance;
};
nlohmann::json prepared_to_json(const PreparedDataset& ds);
PreparedDataset prepared_from_json(const nlohmann::json& j);

}  // namespace qganf
