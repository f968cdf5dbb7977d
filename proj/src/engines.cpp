#include "qganf/engines.hpp"

#include <algorithm>
#include <cmath>

#include "qganf/ansatz.hpp"
#include "qganf/statevector.hpp"

namespace qganf {

namespace {

void check_dataset(const WindowedDataset& ds, bool want_normalized, const char* engine) {
    if (ds.pairs.empty()) throw TrainError(std::string(engine) + ": empty dataset");
    if (ds.normalized != want_normalized) {
        throw TrainError(std::string(engine) + (want_normalized
                             ? ": requires an L2-normalized dataset"
                             : ": requires a scaled (not L2-normalized) dataset"));
    }
}

void check_finite_loss(double loss, const char* engine) {
    if (!std::isfinite(loss)) {
        throw TrainError(std::string(engine) + ": loss diverged to a non-finite value");
    }
}

std::vector<std::size_t> batch_bounds(std::size_t n, int batch_size) {
    std::vector<std::size_t> bounds{0};
    while (bounds.back() < n) {
        bounds.push_back(std::min(n, bounds.back() + static_cast<std::size_t>(batch_size)));
    }
    return bounds;
}

// Shared adversarial loop for the classical engines. The generator consumes
// past || noise and emits the future window; the discriminator scores
// past || future.
ModelArtifact train_classical_gan(const WindowedDataset& ds, const TrainConfig& config,
                                  int past_width, const char* engine) {
    check_dataset(ds, false, engine);
    if (config.epochs < 1 || config.batch_size < 1) {
        throw TrainError(std::string(engine) + ": epochs and batch size must be >= 1");
    }
    const int f = ds.spec.f;
    std::mt19937_64 rng(config.seed);

    ModelArtifact art;
    art.kind = config.kind;
    art.window = ds.spec;
    art.scaling = ds.scaling;
    art.hp_lambda = config.hp_lambda;
    art.noise_dim = config.noise_dim;
    art.has_generator = true;
    art.has_discriminator = true;
    art.generator =
        make_dense_net({past_width + config.noise_dim, 64, 64, f}, Activation::Linear, rng);
    art.discriminator = make_dense_net({past_width + f, 64, 32, 1}, Activation::Sigmoid, rng);

    const auto bounds = batch_bounds(ds.pairs.size(), config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_d = 0.0, epoch_g = 0.0;
        int n_batches = 0;
        for (std::size_t bi = 0; bi + 1 < bounds.size(); ++bi) {
            const std::size_t lo = bounds[bi], hi = bounds[bi + 1];
            const std::size_t bsz = hi - lo;

            Batch gen_in(bsz), real_rows(bsz);
            for (std::size_t s = 0; s < bsz; ++s) {
                const WindowPair& pair = ds.pairs[lo + s];
                gen_in[s] = pair.past;
                const auto noise = noise_inject(rng, config.noise_dim);
                gen_in[s].insert(gen_in[s].end(), noise.begin(), noise.end());
                real_rows[s] = pair.past;
                real_rows[s].insert(real_rows[s].end(), pair.target.begin(), pair.target.end());
            }

            // Discriminator step: real label 1, generated label 0.
            Batch fake_out = forward(art.generator, gen_in);
            Batch disc_in = real_rows;
            Batch labels(2 * bsz, std::vector<double>{1.0});
            for (std::size_t s = 0; s < bsz; ++s) {
                std::vector<double> row(ds.pairs[lo + s].past);
                row.insert(row.end(), fake_out[s].begin(), fake_out[s].end());
                disc_in.push_back(std::move(row));
                labels[bsz + s][0] = 0.0;
            }
            ForwardCache d_cache;
            Batch d_out = forward(art.discriminator, disc_in, &d_cache);
            const double loss_d = bce_loss(d_out, labels);
            check_finite_loss(loss_d, engine);
            adam_step(art.discriminator, backward(art.discriminator, d_cache,
                                                  bce_loss_grad(d_out, labels)),
                      config.disc_adam);

            // Generator step, non-saturating: push D(fake) toward 1.
            ForwardCache g_cache;
            Batch fake = forward(art.generator, gen_in, &g_cache);
            Batch fake_rows(bsz);
            for (std::size_t s = 0; s < bsz; ++s) {
                fake_rows[s] = ds.pairs[lo + s].past;
                fake_rows[s].insert(fake_rows[s].end(), fake[s].begin(), fake[s].end());
            }
            ForwardCache d2_cache;
            Batch d_fake = forward(art.discriminator, fake_rows, &d2_cache);
            Batch ones(bsz, std::vector<double>{1.0});
            const double loss_g = bce_loss(d_fake, ones);
            check_finite_loss(loss_g, engine);
            Gradients through_d =
                backward(art.discriminator, d2_cache, bce_loss_grad(d_fake, ones));
            Batch g_out_grad(bsz, std::vector<double>(f));
            for (std::size_t s = 0; s < bsz; ++s) {
                for (int i = 0; i < f; ++i) {
                    g_out_grad[s][i] = through_d.d_input[s][past_width + i];
                }
            }
            adam_step(art.generator, backward(art.generator, g_cache, g_out_grad),
                      config.gen_adam);

            epoch_d += loss_d;
            epoch_g += loss_g;
            ++n_batches;
        }
        art.loss_history.push_back({epoch_g / n_batches, epoch_d / n_batches});
    }
    return art;
}

// Hybrid generator readout: angle-encode the past window, apply the ansatz
// over all qubits, read (1 + <Z> on qubit 0) / 2.
double hybrid_readout(const std::vector<double>& past, const AnsatzSpec& spec,
                      const std::vector<double>& theta) {
    std::vector<double> clamped(past.size());
    for (std::size_t i = 0; i < past.size(); ++i) {
        clamped[i] = std::clamp(past[i], 0.0, 1.0);
    }
    StateVector s = angle_encode(clamped);
    std::vector<int> reg(past.size());
    for (std::size_t i = 0; i < reg.size(); ++i) reg[i] = static_cast<int>(i);
    s = apply_ansatz(s, spec, theta, reg);
    return (1.0 + expectation_z(s, 0)) / 2.0;
}

struct FqganLayout {
    int n_gen = 0;   // generator register width
    int n_data = 0;  // data register width
    std::vector<int> gen_reg, data_reg, overlap_reg;
    int ancilla = 0;
};

FqganLayout fqgan_layout(int b, int target_len) {
    if (b < 2 || target_len < 2) {
        throw TrainError("fqgan: past and target windows must have length >= 2");
    }
    FqganLayout lay;
    lay.n_gen = ceil_log2(b);
    lay.n_data = ceil_log2(target_len);
    if (lay.n_data > lay.n_gen) {
        throw TrainError("fqgan: data register wider than generator register (" +
                         std::to_string(lay.n_data) + " > " + std::to_string(lay.n_gen) + ")");
    }
    if (lay.n_gen + lay.n_data + 1 > kMaxQubits) {
        throw TrainError("fqgan: qubit cap exceeded");
    }
    for (int q = 0; q < lay.n_gen; ++q) lay.gen_reg.push_back(q);
    for (int q = 0; q < lay.n_data; ++q) {
        lay.overlap_reg.push_back(q);
        lay.data_reg.push_back(lay.n_gen + q);
    }
    lay.ancilla = lay.n_gen + lay.n_data;
    return lay;
}

StateVector fqgan_generator_state(const std::vector<double>& normalized_past,
                                  const FqganLayout& lay, const AnsatzSpec& spec,
                                  const std::vector<double>& theta) {
    StateVector gen = amplitude_embed(normalized_past, lay.n_gen);
    return apply_ansatz(gen, spec, theta, lay.gen_reg);
}

ModelArtifact train_fqgan_impl(const WindowedDataset& ds, const TrainConfig& config,
                               bool invertible) {
    const char* engine = invertible ? "invertible_fqgan" : "fqgan";
    check_dataset(ds, true, engine);
    if (config.epochs < 1 || config.batch_size < 1) {
        throw TrainError(std::string(engine) + ": epochs and batch size must be >= 1");
    }
    if (invertible != ds.spec.overlapped) {
        throw TrainError(std::string(engine) + (invertible
                             ? ": requires an overlapped dataset"
                             : ": dataset must not be overlapped"));
    }
    const int target_len = static_cast<int>(ds.pairs.front().target.size());
    const FqganLayout lay = fqgan_layout(ds.spec.b, target_len);
    const AnsatzSpec spec{lay.n_gen, config.ansatz_layers};

    // Target embeddings are fixed throughout training.
    std::vector<StateVector> data_states;
    data_states.reserve(ds.pairs.size());
    const StateVector anc0 = zero_state(1);
    for (const WindowPair& pair : ds.pairs) {
        if (invertible) {
            // Overlap equality must survive normalization of past vs target.
            const int f = ds.spec.f;
            for (int i = 0; i < f; ++i) {
                const double past_tail = pair.past[ds.spec.b - f + i] * pair.past_norm;
                const double target_head = pair.target[i] * pair.target_norm;
                if (std::abs(past_tail - target_head) > 1e-9) {
                    throw TrainError("invertible_fqgan: overlap consistency violated");
                }
            }
        }
        data_states.push_back(amplitude_embed(pair.target, lay.n_data));
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init(-0.1, 0.1);
    std::vector<double> theta(spec.param_count());
    for (double& t : theta) t = init(rng);

    auto batch_loss = [&](const std::vector<double>& angles, std::size_t lo,
                          std::size_t hi) -> double {
        double total = 0.0;
        for (std::size_t s = lo; s < hi; ++s) {
            StateVector gen = fqgan_generator_state(ds.pairs[s].past, lay, spec, angles);
            StateVector joint = tensor_product(tensor_product(gen, data_states[s]), anc0);
            const double p0 =
                partial_swap_test(joint, lay.overlap_reg, lay.data_reg, lay.ancilla);
            total += 1.0 - p0;
        }
        return total / static_cast<double>(hi - lo);
    };

    ModelArtifact art;
    art.kind = invertible ? ModelKind::InvertibleFqgan : ModelKind::Fqgan;
    art.window = ds.spec;
    art.scaling = ds.scaling;
    art.hp_lambda = config.hp_lambda;
    art.ansatz_layers = config.ansatz_layers;
    art.gen_qubits = lay.n_gen;
    art.data_qubits = lay.n_data;

    AdamState adam;
    const auto bounds = batch_bounds(ds.pairs.size(), config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_loss = 0.0;
        int n_batches = 0;
        for (std::size_t bi = 0; bi + 1 < bounds.size(); ++bi) {
            const std::size_t lo = bounds[bi], hi = bounds[bi + 1];
            const double loss = batch_loss(theta, lo, hi);
            check_finite_loss(loss, engine);
            if (loss < -1e-9 || loss > 0.5 + 1e-9) {
                throw TrainError(std::string(engine) + ": loss left the [0, 0.5] bound");
            }
            const auto grad = parameter_shift_gradient(
                [&](const std::vector<double>& angles) { return batch_loss(angles, lo, hi); },
                theta);
            adam_step_flat(theta, grad, adam, config.gen_adam);
            epoch_loss += loss;
            ++n_batches;
        }
        art.loss_history.push_back({epoch_loss / n_batches, 0.0});
    }
    art.theta = theta;
    return art;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::SimpleGan: return "simple_gan";
        case ModelKind::GanTi: return "gan_ti";
        case ModelKind::HybridQgan: return "hybrid_qgan";
        case ModelKind::Fqgan: return "fqgan";
        case ModelKind::InvertibleFqgan: return "invertible_fqgan";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "simple_gan") return ModelKind::SimpleGan;
    if (name == "gan_ti") return ModelKind::GanTi;
    if (name == "hybrid_qgan") return ModelKind::HybridQgan;
    if (name == "fqgan") return ModelKind::Fqgan;
    if (name == "invertible_fqgan") return ModelKind::InvertibleFqgan;
    throw std::invalid_argument("unknown model kind: " + name);
}

std::vector<double> noise_inject(std::mt19937_64& rng, int dim) {
    if (dim < 0) throw std::invalid_argument("noise_inject: dim must be >= 0");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(dim);
    for (double& v : out) v = normal(rng);
    return out;
}

ModelArtifact train_simple_gan(const WindowedDataset& dataset, const TrainConfig& config) {
    TrainConfig cfg = config;
    cfg.kind = ModelKind::SimpleGan;
    return train_classical_gan(dataset, cfg, dataset.spec.b, "simple_gan");
}

WindowedDataset make_feature_windows(const FeatureMatrix& scaled_features,
                                     const WindowSpec& spec, const ScalingState& scaling) {
    if (scaled_features.values.empty()) throw DataError("make_feature_windows: empty matrix");
    const int n_cols = static_cast<int>(scaled_features.values.size());
    const int n = static_cast<int>(scaled_features.rows());
    if (n < spec.b + spec.f) throw DataError("make_feature_windows: series shorter than b + f");
    WindowedDataset ds;
    ds.spec = spec;
    ds.spec.overlapped = false;
    ds.scaling = scaling;
    for (int t = 0; t + spec.b + spec.f <= n; t += spec.stride) {
        WindowPair pair;
        pair.past.reserve(static_cast<std::size_t>(spec.b) * n_cols);
        for (int r = t; r < t + spec.b; ++r) {
            for (int c = 0; c < n_cols; ++c) pair.past.push_back(scaled_features.values[c][r]);
        }
        // Column 0 is the scaled adjusted close.
        for (int r = t + spec.b; r < t + spec.b + spec.f; ++r) {
            pair.target.push_back(scaled_features.values[0][r]);
        }
        ds.pairs.push_back(std::move(pair));
    }
    return ds;
}

ModelArtifact train_gan_ti(const WindowedDataset& feature_dataset, const TrainConfig& config) {
    check_dataset(feature_dataset, false, "gan_ti");
    const int past_width = static_cast<int>(feature_dataset.pairs.front().past.size());
    if (past_width % feature_dataset.spec.b != 0) {
        throw TrainError("gan_ti: past width is not a multiple of b");
    }
    TrainConfig cfg = config;
    cfg.kind = ModelKind::GanTi;
    return train_classical_gan(feature_dataset, cfg, past_width, "gan_ti");
}

ModelArtifact train_hybrid_qgan(const WindowedDataset& dataset, const TrainConfig& config) {
    check_dataset(dataset, false, "hybrid_qgan");
    if (dataset.spec.f != 1) throw TrainError("hybrid_qgan: requires f = 1");
    const int b = dataset.spec.b;
    if (b > kMaxQubits) throw TrainError("hybrid_qgan: qubit cap exceeded");
    if (config.epochs < 1 || config.batch_size < 1) {
        throw TrainError("hybrid_qgan: epochs and batch size must be >= 1");
    }
    const AnsatzSpec spec{b, config.ansatz_layers};
    std::mt19937_64 rng(config.seed);

    ModelArtifact art;
    art.kind = ModelKind::HybridQgan;
    art.window = dataset.spec;
    art.scaling = dataset.scaling;
    art.hp_lambda = config.hp_lambda;
    art.ansatz_layers = config.ansatz_layers;
    art.gen_qubits = b;
    art.has_discriminator = true;
    art.discriminator = make_dense_net({b + 1, 64, 32, 1}, Activation::Sigmoid, rng);

    std::uniform_real_distribution<double> init(-0.1, 0.1);
    std::vector<double> theta(spec.param_count());
    for (double& t : theta) t = init(rng);
    AdamState adam;

    const auto bounds = batch_bounds(dataset.pairs.size(), config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_d = 0.0, epoch_g = 0.0;
        int n_batches = 0;
        for (std::size_t bi = 0; bi + 1 < bounds.size(); ++bi) {
            const std::size_t lo = bounds[bi], hi = bounds[bi + 1];
            const std::size_t bsz = hi - lo;

            std::vector<double> y_hat(bsz);
            for (std::size_t s = 0; s < bsz; ++s) {
                y_hat[s] = hybrid_readout(dataset.pairs[lo + s].past, spec, theta);
            }

            // Discriminator step on past||y_true vs past||y_hat.
            Batch disc_in;
            Batch labels;
            for (std::size_t s = 0; s < bsz; ++s) {
                std::vector<double> row = dataset.pairs[lo + s].past;
                row.push_back(dataset.pairs[lo + s].target[0]);
                disc_in.push_back(std::move(row));
                labels.push_back({1.0});
            }
            for (std::size_t s = 0; s < bsz; ++s) {
                std::vector<double> row = dataset.pairs[lo + s].past;
                row.push_back(y_hat[s]);
                disc_in.push_back(std::move(row));
                labels.push_back({0.0});
            }
            ForwardCache d_cache;
            Batch d_out = forward(art.discriminator, disc_in, &d_cache);
            const double loss_d = bce_loss(d_out, labels);
            check_finite_loss(loss_d, "hybrid_qgan");
            adam_step(art.discriminator, backward(art.discriminator, d_cache,
                                                  bce_loss_grad(d_out, labels)),
                      config.disc_adam);

            // Generator step: chain the classical input gradient at the y_hat
            // slot with the parameter-shift circuit gradient.
            Batch fake_rows;
            for (std::size_t s = 0; s < bsz; ++s) {
                std::vector<double> row = dataset.pairs[lo + s].past;
                row.push_back(y_hat[s]);
                fake_rows.push_back(std::move(row));
            }
            ForwardCache d2_cache;
            Batch d_fake = forward(art.discriminator, fake_rows, &d2_cache);
            Batch ones(bsz, std::vector<double>{1.0});
            const double loss_g = bce_loss(d_fake, ones);
            check_finite_loss(loss_g, "hybrid_qgan");
            Gradients through_d =
                backward(art.discriminator, d2_cache, bce_loss_grad(d_fake, ones));

            std::vector<double> theta_grad(theta.size(), 0.0);
            for (std::size_t s = 0; s < bsz; ++s) {
                const double dl_dy = through_d.d_input[s][b];
                const auto circuit_grad = parameter_shift_gradient(
                    [&](const std::vector<double>& angles) {
                        return hybrid_readout(dataset.pairs[lo + s].past, spec, angles);
                    },
                    theta);
                for (std::size_t k = 0; k < theta.size(); ++k) {
                    theta_grad[k] += dl_dy * circuit_grad[k];
                }
            }
            adam_step_flat(theta, theta_grad, adam, config.gen_adam);

            epoch_d += loss_d;
            epoch_g += loss_g;
            ++n_batches;
        }
        art.loss_history.push_back({epoch_g / n_batches, epoch_d / n_batches});
    }
    art.theta = theta;
    return art;
}

ModelArtifact train_fqgan(const WindowedDataset& dataset, const TrainConfig& config) {
    return train_fqgan_impl(dataset, config, false);
}

ModelArtifact train_invertible_fqgan(const WindowedDataset& dataset,
                                     const TrainConfig& config) {
    return train_fqgan_impl(dataset, config, true);
}

std::vector<double> fqgan_readout(const ModelArtifact& artifact,
                                  const std::vector<double>& normalized_past) {
    const int target_len =
        artifact.window.overlapped ? 2 * artifact.window.f : artifact.window.f;
    FqganLayout lay = fqgan_layout(artifact.window.b, target_len);
    const AnsatzSpec spec{lay.n_gen, artifact.ansatz_layers};
    StateVector gen = fqgan_generator_state(normalized_past, lay, spec, artifact.theta);
    std::vector<int> first(lay.n_data);
    for (int q = 0; q < lay.n_data; ++q) first[q] = q;
    const auto probs = marginal_probabilities(gen, first);
    std::vector<double> out(target_len);
    for (int i = 0; i < target_len; ++i) out[i] = std::sqrt(probs[i]);
    return out;
}

InvertiblePrediction invertible_recover(const std::vector<double>& y_hat,
                                        const std::vector<double>& scaled_past, int f,
                                        const ScalingState& scaling, double lambda) {
    if (static_cast<int>(y_hat.size()) != 2 * f) {
        throw DataError("invertible_recover: expected a readout of length 2f");
    }
    if (static_cast<int>(scaled_past.size()) < f) {
        throw DataError("invertible_recover: past window shorter than f");
    }
    std::vector<double> overlap_truth(scaled_past.end() - f, scaled_past.end());
    std::vector<double> overlap_pred(y_hat.begin(), y_hat.begin() + f);
    const NormalizationRecovery rec = recover_normalization(overlap_truth, overlap_pred);
    if (!(rec.factor > 0.0)) {
        throw DataError("invertible_recover: recovered factor is not positive");
    }
    std::vector<double> future(y_hat.begin() + f, y_hat.end());
    InvertiblePrediction pred;
    pred.factor = rec.factor;
    pred.prices = inverse_pipeline(future, rec.factor, scaling, lambda);
    return pred;
}

std::vector<std::vector<double>> predict(const ModelArtifact& artifact,
                                         const WindowedDataset& dataset) {
    if (dataset.pairs.empty()) throw DataError("predict: empty dataset");
    if (dataset.spec.b != artifact.window.b || dataset.spec.f != artifact.window.f) {
        throw DataError("predict: dataset window spec does not match the artifact");
    }
    const int f = artifact.window.f;
    std::vector<std::vector<double>> out;
    out.reserve(dataset.pairs.size());

    switch (artifact.kind) {
        case ModelKind::SimpleGan:
        case ModelKind::GanTi: {
            if (dataset.normalized) throw DataError("predict: expected a scaled dataset");
            // Zero noise at prediction time keeps the output deterministic.
            Batch input;
            for (const WindowPair& pair : dataset.pairs) {
                std::vector<double> row = pair.past;
                row.insert(row.end(), artifact.noise_dim, 0.0);
                input.push_back(std::move(row));
            }
            Batch scaled = forward(artifact.generator, input);
            for (const auto& row : scaled) out.push_back(minmax_invert(row, artifact.scaling));
            break;
        }
        case ModelKind::HybridQgan: {
            if (dataset.normalized) throw DataError("predict: expected a scaled dataset");
            const AnsatzSpec spec{artifact.gen_qubits, artifact.ansatz_layers};
            for (const WindowPair& pair : dataset.pairs) {
                const double y = hybrid_readout(pair.past, spec, artifact.theta);
                out.push_back(minmax_invert({y}, artifact.scaling));
            }
            break;
        }
        case ModelKind::Fqgan: {
            if (!dataset.normalized) throw DataError("predict: fqgan expects a normalized dataset");
            for (const WindowPair& pair : dataset.pairs) {
                const auto y_hat = fqgan_readout(artifact, pair.past);
                // Stored target norms: the non-invertible path leaks them by design.
                out.push_back(inverse_pipeline(y_hat, pair.target_norm, artifact.scaling,
                                               artifact.hp_lambda));
            }
            break;
        }
        case ModelKind::InvertibleFqgan: {
            if (!dataset.normalized) {
                throw DataError("predict: invertible_fqgan expects a normalized dataset");
            }
            for (const WindowPair& pair : dataset.pairs) {
                const auto y_hat = fqgan_readout(artifact, pair.past);
                std::vector<double> scaled_past(pair.past.size());
                for (std::size_t i = 0; i < pair.past.size(); ++i) {
                    scaled_past[i] = pair.past[i] * pair.past_norm;
                }
                out.push_back(invertible_recover(y_hat, scaled_past, f, artifact.scaling,
                                                 artifact.hp_lambda)
                                  .prices);
            }
            break;
        }
    }
    for (const auto& row : out) {
        if (static_cast<int>(row.size()) != f) {
            throw DataError("predict: internal shape error");
        }
    }
    return out;
}

std::vector<std::vector<double>> true_prices(const WindowedDataset& dataset) {
    const int f = dataset.spec.f;
    std::vector<std::vector<double>> out;
    out.reserve(dataset.pairs.size());
    for (const WindowPair& pair : dataset.pairs) {
        std::vector<double> scaled(pair.target.size());
        for (std::size_t i = 0; i < pair.target.size(); ++i) {
            scaled[i] = pair.target[i] * (dataset.normalized ? pair.target_norm : 1.0);
        }
        // Overlapped targets: the last f entries are the true future.
        std::vector<double> future(scaled.end() - f, scaled.end());
        out.push_back(minmax_invert(future, dataset.scaling));
    }
    return out;
}

namespace {

nlohmann::json net_to_json(const DenseNet& net) {
    nlohmann::json j;
    j["adam_step_count"] = net.adam_step_count;
    j["layers"] = nlohmann::json::array();
    for (const DenseLayer& layer : net.layers) {
        nlohmann::json jl;
        jl["in"] = layer.in;
        jl["out"] = layer.out;
        jl["activation"] = static_cast<int>(layer.activation);
        jl["weights"] = layer.weights;
        jl["biases"] = layer.biases;
        jl["m_w"] = layer.m_w;
        jl["v_w"] = layer.v_w;
        jl["m_b"] = layer.m_b;
        jl["v_b"] = layer.v_b;
        j["layers"].push_back(std::move(jl));
    }
    return j;
}

DenseNet net_from_json(const nlohmann::json& j) {
    DenseNet net;
    net.adam_step_count = j.at("adam_step_count").get<std::int64_t>();
    for (const auto& jl : j.at("layers")) {
        DenseLayer layer;
        layer.in = jl.at("in").get<int>();
        layer.out = jl.at("out").get<int>();
        layer.activation = static_cast<Activation>(jl.at("activation").get<int>());
        layer.weights = jl.at("weights").get<std::vector<double>>();
        layer.biases = jl.at("biases").get<std::vector<double>>();
        layer.m_w = jl.at("m_w").get<std::vector<double>>();
        layer.v_w = jl.at("v_w").get<std::vector<double>>();
        layer.m_b = jl.at("m_b").get<std::vector<double>>();
        layer.v_b = jl.at("v_b").get<std::vector<double>>();
        net.layers.push_back(std::move(layer));
    }
    return net;
}

}  // namespace

nlohmann::json artifact_to_json(const ModelArtifact& artifact) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = to_string(artifact.kind);
    j["window"] = {{"b", artifact.window.b},
                   {"f", artifact.window.f},
                   {"stride", artifact.window.stride},
                   {"overlapped", artifact.window.overlapped}};
    j["scaling"] = {{"min", artifact.scaling.min}, {"max", artifact.scaling.max}};
    j["hp_lambda"] = artifact.hp_lambda;
    j["noise_dim"] = artifact.noise_dim;
    j["theta"] = artifact.theta;
    j["ansatz_layers"] = artifact.ansatz_layers;
    j["gen_qubits"] = artifact.gen_qubits;
    j["data_qubits"] = artifact.data_qubits;
    if (artifact.has_generator) j["generator"] = net_to_json(artifact.generator);
    if (artifact.has_discriminator) j["discriminator"] = net_to_json(artifact.discriminator);
    j["loss_history"] = nlohmann::json::array();
    for (const EpochLoss& e : artifact.loss_history) {
        j["loss_history"].push_back({{"loss_g", e.loss_g}, {"loss_d", e.loss_d}});
    }
    return j;
}

ModelArtifact artifact_from_json(const nlohmann::json& j) {
    ModelArtifact art;
    art.kind = model_kind_from_string(j.at("kind").get<std::string>());
    art.window.b = j.at("window").at("b").get<int>();
    art.window.f = j.at("window").at("f").get<int>();
    art.window.stride = j.at("window").at("stride").get<int>();
    art.window.overlapped = j.at("window").at("overlapped").get<bool>();
    art.scaling.min = j.at("scaling").at("min").get<double>();
    art.scaling.max = j.at("scaling").at("max").get<double>();
    art.hp_lambda = j.at("hp_lambda").get<double>();
    art.noise_dim = j.at("noise_dim").get<int>();
    art.theta = j.at("theta").get<std::vector<double>>();
    art.ansatz_layers = j.at("ansatz_layers").get<int>();
    art.gen_qubits = j.at("gen_qubits").get<int>();
    art.data_qubits = j.at("data_qubits").get<int>();
    if (j.contains("generator")) {
        art.has_generator = true;
        art.generator = net_from_json(j.at("generator"));
    }
    if (j.contains("discriminator")) {
        art.has_discriminator = true;
        art.discriminator = net_from_json(j.at("discriminator"));
    }
    for (const auto& je : j.at("loss_history")) {
        art.loss_history.push_back(
            {je.at("loss_g").get<double>(), je.at("loss_d").get<double>()});
    }
    return art;
}

}  // namespace qganf
