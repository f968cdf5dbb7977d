// engines.hpp
// The four adversarial training engines and their prediction paths:
// Simple GAN, Classical GAN with technical indicators, Hybrid QGAN and the
// Fully Quantum GAN (plus its Invertible variant).

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qganf/dataprep.hpp"
#include "qganf/features.hpp"
#include "qganf/neural.hpp"

#include "json.hpp"

namespace qganf {

struct TrainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind { SimpleGan, GanTi, HybridQgan, Fqgan, InvertibleFqgan };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct TrainConfig {
    ModelKind kind = ModelKind::SimpleGan;
    int epochs = 150;
    int batch_size = 128;
    AdamConfig gen_adam{0.00016};
    AdamConfig disc_adam{0.00016};
    WindowSpec window;
    int ansatz_layers = 3;
    int noise_dim = 8;  // classical generators; quantum engines default to 0
    std::uint64_t seed = 42;
    double hp_lambda = 1600.0;
};

struct EpochLoss {
    double loss_g = 0.0;
    double loss_d = 0.0;
};

// Everything predict() needs, with no other state.
struct ModelArtifact {
    ModelKind kind = ModelKind::SimpleGan;
    WindowSpec window;
    ScalingState scaling;
    double hp_lambda = 0.0;
    int noise_dim = 0;

    bool has_generator = false;
    bool has_discriminator = false;
    DenseNet generator;
    DenseNet discriminator;

    std::vector<double> theta;  // variational angles, quantum engines
    int ansatz_layers = 0;
    int gen_qubits = 0;
    int data_qubits = 0;

    std::vector<EpochLoss> loss_history;
};

ModelArtifact train_simple_gan(const WindowedDataset& dataset, const TrainConfig& config);

// Feature windows: past rows flattened time-major over all 8 feature columns,
// targets over the scaled adj_close column.
WindowedDataset make_feature_windows(const FeatureMatrix& scaled_features,
                                     const WindowSpec& spec, const ScalingState& scaling);
ModelArtifact train_gan_ti(const WindowedDataset& feature_dataset, const TrainConfig& config);

// Quantum generator (angle encoding + ansatz, Pauli-Z readout on qubit 0)
// against a classical discriminator. Restricted to f = 1.
ModelArtifact train_hybrid_qgan(const WindowedDataset& dataset, const TrainConfig& config);

// SWAP-test discriminator; the generator loss 1 - P0 is minimized by
// parameter-shift Adam. Requires a per-window L2-normalized dataset.
ModelArtifact train_fqgan(const WindowedDataset& dataset, const TrainConfig& config);

// FQGAN over overlapped targets of length 2f; artifact flagged invertible.
ModelArtifact train_invertible_fqgan(const WindowedDataset& dataset, const TrainConfig& config);

// Predicted prices per window (length f each), after the full inverse
// transforms for the artifact's kind.
std::vector<std::vector<double>> predict(const ModelArtifact& artifact,
                                         const WindowedDataset& dataset);

// True prices per window (length f), for evaluation against predict().
std::vector<std::vector<double>> true_prices(const WindowedDataset& dataset);

// Invertible-FQGAN inversion path, factored out so the normalized readout
// can be supplied directly: recovers the factor from the overlap (first f
// entries of y_hat against the scaled tail of the past window), then runs
// the inverse pipeline on the remaining f entries.
struct InvertiblePrediction {
    double factor = 1.0;
    std::vector<double> prices;
};
InvertiblePrediction invertible_recover(const std::vector<double>& y_hat,
                                        const std::vector<double>& scaled_past, int f,
                                        const ScalingState& scaling, double lambda);

// Normalized FQGAN readout: sqrt of the generator-register marginal
// probabilities, truncated to the target length.
std::vector<double> fqgan_readout(const ModelArtifact& artifact,
                                  const std::vector<double>& normalized_past);

// Standard-normal vector from the seeded RNG; dim = 0 yields an empty vector.
std::vector<double> noise_inject(std::mt19937_64& rng, int dim);

nlohmann::json artifact_to_json(const ModelArtifact& artifact);
ModelArtifact artifact_from_json(const nlohmann::json& j);

}  // namespace qganf
