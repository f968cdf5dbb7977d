// neural.hpp
// Minimal fully connected network with reverse-mode gradients and Adam,
// sized for the GAN generator/discriminator roles.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qganf {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

enum class Activation { LeakyRelu, Sigmoid, Linear };

struct DenseLayer {
    int in = 0;
    int out = 0;
    Activation activation = Activation::Linear;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> biases;   // out
    // Adam moments, one per parameter
    std::vector<double> m_w, v_w, m_b, v_b;
};

using Batch = std::vector<std::vector<double>>;

struct ForwardCache {
    Batch input;
    std::vector<Batch> pre_activations;   // per layer
    std::vector<Batch> post_activations;  // per layer
};

struct Gradients {
    std::vector<std::vector<double>> d_weights;  // per layer
    std::vector<std::vector<double>> d_biases;
    Batch d_input;  // dL/dx per sample
};

struct DenseNet {
    std::vector<DenseLayer> layers;
    std::int64_t adam_step_count = 0;

    int input_width() const { return layers.empty() ? 0 : layers.front().in; }
    int output_width() const { return layers.empty() ? 0 : layers.back().out; }
};

inline constexpr double kLeakySlope = 0.2;
inline constexpr double kProbClamp = 1e-7;

// Builds a net with leaky-rectifier hidden layers and the given output
// activation; weights uniform in +-1/sqrt(fan_in) from the supplied RNG.
DenseNet make_dense_net(const std::vector<int>& layer_sizes, Activation output_activation,
                        std::mt19937_64& rng);

Batch forward(const DenseNet& net, const Batch& input, ForwardCache* cache = nullptr);

// Mean binary cross-entropy over all elements; probabilities clamped to
// [kProbClamp, 1 - kProbClamp].
double bce_loss(const Batch& predicted, const Batch& labels);
double mse_loss(const Batch& predicted, const Batch& target);

// dL/d(prediction) of the batch-mean losses, matching the clamping above.
Batch bce_loss_grad(const Batch& predicted, const Batch& labels);
Batch mse_loss_grad(const Batch& predicted, const Batch& target);

// Exact reverse-mode gradients; output_grad holds dL/d(output) per sample.
Gradients backward(const DenseNet& net, const ForwardCache& cache, const Batch& output_grad);

// Bias-corrected Adam update in place. Rejects non-finite gradients.
void adam_step(DenseNet& net, const Gradients& grads, const AdamConfig& config);

// Flat parameter vector Adam, used for circuit angles.
struct AdamState {
    std::vector<double> m, v;
    std::int64_t t = 0;
};
void adam_step_flat(std::vector<double>& params, const std::vector<double>& grad,
                    AdamState& state, const AdamConfig& config);

}  // namespace qganf
