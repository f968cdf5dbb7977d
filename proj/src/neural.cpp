#include "qganf/neural.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qganf {

namespace {

double activate(double x, Activation a) {
    switch (a) {
        case Activation::LeakyRelu:
            return x >= 0.0 ? x : kLeakySlope * x;
        case Activation::Sigmoid:
            return 1.0 / (1.0 + std::exp(-x));
        case Activation::Linear:
            return x;
    }
    return x;
}

// Derivative in terms of pre-activation x and post-activation y.
double activate_grad(double x, double y, Activation a) {
    switch (a) {
        case Activation::LeakyRelu:
            return x >= 0.0 ? 1.0 : kLeakySlope;
        case Activation::Sigmoid:
            return y * (1.0 - y);
        case Activation::Linear:
            return 1.0;
    }
    return 1.0;
}

void check_batch(const Batch& batch, int width, const char* what) {
    if (batch.empty()) throw std::invalid_argument(std::string(what) + ": empty batch");
    for (const auto& row : batch) {
        if (static_cast<int>(row.size()) != width) {
            throw std::invalid_argument(std::string(what) + ": row width mismatch");
        }
    }
}

}  // namespace

DenseNet make_dense_net(const std::vector<int>& layer_sizes, Activation output_activation,
                        std::mt19937_64& rng) {
    if (layer_sizes.size() < 2) {
        throw std::invalid_argument("make_dense_net: need at least input and output sizes");
    }
    DenseNet net;
    for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
        DenseLayer layer;
        layer.in = layer_sizes[i];
        layer.out = layer_sizes[i + 1];
        if (layer.in < 1 || layer.out < 1) {
            throw std::invalid_argument("make_dense_net: layer sizes must be positive");
        }
        layer.activation =
            (i + 2 == layer_sizes.size()) ? output_activation : Activation::LeakyRelu;
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
        std::uniform_real_distribution<double> dist(-bound, bound);
        layer.weights.resize(static_cast<std::size_t>(layer.in) * layer.out);
        for (double& w : layer.weights) w = dist(rng);
        layer.biases.assign(layer.out, 0.0);
        layer.m_w.assign(layer.weights.size(), 0.0);
        layer.v_w.assign(layer.weights.size(), 0.0);
        layer.m_b.assign(layer.biases.size(), 0.0);
        layer.v_b.assign(layer.biases.size(), 0.0);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

Batch forward(const DenseNet& net, const Batch& input, ForwardCache* cache) {
    check_batch(input, net.input_width(), "forward");
    if (cache) {
        cache->input = input;
        cache->pre_activations.clear();
        cache->post_activations.clear();
    }
    Batch current = input;
    for (const DenseLayer& layer : net.layers) {
        Batch pre(current.size(), std::vector<double>(layer.out));
        Batch post(current.size(), std::vector<double>(layer.out));
        for (std::size_t s = 0; s < current.size(); ++s) {
            for (int o = 0; o < layer.out; ++o) {
                double acc = layer.biases[o];
                const double* w_row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
                for (int i = 0; i < layer.in; ++i) acc += w_row[i] * current[s][i];
                pre[s][o] = acc;
                post[s][o] = activate(acc, layer.activation);
            }
        }
        if (cache) {
            cache->pre_activations.push_back(pre);
            cache->post_activations.push_back(post);
        }
        current = std::move(post);
    }
    return current;
}

double bce_loss(const Batch& predicted, const Batch& labels) {
    if (predicted.size() != labels.size()) throw std::invalid_argument("bce_loss: batch mismatch");
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < predicted.size(); ++s) {
        if (predicted[s].size() != labels[s].size()) {
            throw std::invalid_argument("bce_loss: row length mismatch");
        }
        for (std::size_t i = 0; i < predicted[s].size(); ++i) {
            const double p = std::clamp(predicted[s][i], kProbClamp, 1.0 - kProbClamp);
            const double y = labels[s][i];
            total += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("bce_loss: empty batch");
    return total / static_cast<double>(count);
}

double mse_loss(const Batch& predicted, const Batch& target) {
    if (predicted.size() != target.size()) throw std::invalid_argument("mse_loss: batch mismatch");
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < predicted.size(); ++s) {
        if (predicted[s].size() != target[s].size()) {
            throw std::invalid_argument("mse_loss: row length mismatch");
        }
        for (std::size_t i = 0; i < predicted[s].size(); ++i) {
            const double d = predicted[s][i] - target[s][i];
            total += d * d;
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("mse_loss: empty batch");
    return total / static_cast<double>(count);
}

Batch bce_loss_grad(const Batch& predicted, const Batch& labels) {
    if (predicted.size() != labels.size()) {
        throw std::invalid_argument("bce_loss_grad: batch mismatch");
    }
    std::size_t count = 0;
    for (const auto& row : predicted) count += row.size();
    Batch grad(predicted.size());
    for (std::size_t s = 0; s < predicted.size(); ++s) {
        grad[s].resize(predicted[s].size());
        for (std::size_t i = 0; i < predicted[s].size(); ++i) {
            const double p = std::clamp(predicted[s][i], kProbClamp, 1.0 - kProbClamp);
            const double y = labels[s][i];
            grad[s][i] = (p - y) / (p * (1.0 - p)) / static_cast<double>(count);
        }
    }
    return grad;
}

Batch mse_loss_grad(const Batch& predicted, const Batch& target) {
    if (predicted.size() != target.size()) {
        throw std::invalid_argument("mse_loss_grad: batch mismatch");
    }
    std::size_t count = 0;
    for (const auto& row : predicted) count += row.size();
    Batch grad(predicted.size());
    for (std::size_t s = 0; s < predicted.size(); ++s) {
        grad[s].resize(predicted[s].size());
        for (std::size_t i = 0; i < predicted[s].size(); ++i) {
            grad[s][i] = 2.0 * (predicted[s][i] - target[s][i]) / static_cast<double>(count);
        }
    }
    return grad;
}

Gradients backward(const DenseNet& net, const ForwardCache& cache, const Batch& output_grad) {
    if (cache.post_activations.size() != net.layers.size()) {
        throw std::invalid_argument("backward: stale or missing forward cache");
    }
    const std::size_t batch = cache.input.size();
    check_batch(output_grad, net.output_width(), "backward");
    if (output_grad.size() != batch) throw std::invalid_argument("backward: batch mismatch");

    Gradients grads;
    grads.d_weights.resize(net.layers.size());
    grads.d_biases.resize(net.layers.size());

    Batch delta = output_grad;  // dL/d(post-activation of current layer)
    for (int l = static_cast<int>(net.layers.size()) - 1; l >= 0; --l) {
        const DenseLayer& layer = net.layers[l];
        const Batch& pre = cache.pre_activations[l];
        const Batch& post = cache.post_activations[l];
        const Batch& below = (l == 0) ? cache.input : cache.post_activations[l - 1];

        grads.d_weights[l].assign(layer.weights.size(), 0.0);
        grads.d_biases[l].assign(layer.biases.size(), 0.0);
        Batch next_delta(batch, std::vector<double>(layer.in, 0.0));

        for (std::size_t s = 0; s < batch; ++s) {
            for (int o = 0; o < layer.out; ++o) {
                const double dz = delta[s][o] * activate_grad(pre[s][o], post[s][o],
                                                              layer.activation);
                grads.d_biases[l][o] += dz;
                double* gw_row = &grads.d_weights[l][static_cast<std::size_t>(o) * layer.in];
                const double* w_row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
                for (int i = 0; i < layer.in; ++i) {
                    gw_row[i] += dz * below[s][i];
                    next_delta[s][i] += dz * w_row[i];
                }
            }
        }
        delta = std::move(next_delta);
    }
    grads.d_input = std::move(delta);
    return grads;
}

namespace {

void require_finite(const std::vector<double>& grad) {
    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw std::runtime_error("adam: non-finite gradient, update rejected");
        }
    }
}

void adam_update(std::vector<double>& params, const std::vector<double>& grad,
                 std::vector<double>& m, std::vector<double>& v, std::int64_t t,
                 const AdamConfig& c) {
    const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * grad[i];
        v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * grad[i] * grad[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
}

}  // namespace

void adam_step(DenseNet& net, const Gradients& grads, const AdamConfig& config) {
    if (grads.d_weights.size() != net.layers.size()) {
        throw std::invalid_argument("adam_step: gradient shape mismatch");
    }
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const DenseLayer& layer = net.layers[l];
        if (grads.d_weights[l].size() != layer.weights.size() ||
            grads.d_biases[l].size() != layer.biases.size()) {
            throw std::invalid_argument("adam_step: gradient shape mismatch");
        }
        require_finite(grads.d_weights[l]);
        require_finite(grads.d_biases[l]);
    }
    ++net.adam_step_count;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        DenseLayer& layer = net.layers[l];
        adam_update(layer.weights, grads.d_weights[l], layer.m_w, layer.v_w,
                    net.adam_step_count, config);
        adam_update(layer.biases, grads.d_biases[l], layer.m_b, layer.v_b,
                    net.adam_step_count, config);
    }
}

void adam_step_flat(std::vector<double>& params, const std::vector<double>& grad,
                    AdamState& state, const AdamConfig& config) {
    if (grad.size() != params.size()) {
        throw std::invalid_argument("adam_step_flat: gradient shape mismatch");
    }
    require_finite(grad);
    if (state.m.size() != params.size()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
        state.t = 0;
    }
    ++state.t;
    adam_update(params, grad, state.m, state.v, state.t, config);
}

}  // namespace qganf
