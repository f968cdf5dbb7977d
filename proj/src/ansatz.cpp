#include "qganf/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qganf {

int ceil_log2(int x) {
    if (x < 1) throw std::invalid_argument("ceil_log2: argument must be positive");
    int bits = 0;
    int v = 1;
    while (v < x) {
        v <<= 1;
        ++bits;
    }
    return bits;
}

int qubits_required(int b, int f) {
    if (b < 1 || f < 1) {
        throw std::invalid_argument("qubits_required: window lengths must be positive");
    }
    return ceil_log2(b) + ceil_log2(f) + 1;
}

StateVector apply_ansatz(const StateVector& state, const AnsatzSpec& spec,
                         const std::vector<double>& params,
                         const std::vector<int>& reg) {
    if (spec.n_layers < 1) throw std::invalid_argument("apply_ansatz: n_layers must be >= 1");
    if (static_cast<int>(reg.size()) != spec.n_qubits) {
        throw std::invalid_argument("apply_ansatz: register size does not match spec");
    }
    if (static_cast<int>(params.size()) != spec.param_count()) {
        throw std::invalid_argument("apply_ansatz: expected " +
                                    std::to_string(spec.param_count()) + " params, got " +
                                    std::to_string(params.size()));
    }
    StateVector s = state;
    const int n = spec.n_qubits;
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        for (int q = 0; q < n; ++q) {
            apply_gate_inplace(s, GateOp::ry(reg[q], params[layer * n + q]));
        }
        if (n == 2) {
            apply_gate_inplace(s, GateOp::cnot(reg[0], reg[1]));
        } else if (n > 2) {
            for (int q = 0; q + 1 < n; ++q) {
                apply_gate_inplace(s, GateOp::cnot(reg[q], reg[q + 1]));
            }
            apply_gate_inplace(s, GateOp::cnot(reg[n - 1], reg[0]));
        }
    }
    return s;
}

std::vector<double> parameter_shift_gradient(
    const std::function<double(const std::vector<double>&)>& loss_fn,
    const std::vector<double>& params) {
    constexpr double shift = std::numbers::pi / 2.0;
    std::vector<double> grad(params.size());
    std::vector<double> shifted = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        shifted[i] = params[i] + shift;
        const double plus = loss_fn(shifted);
        shifted[i] = params[i] - shift;
        const double minus = loss_fn(shifted);
        shifted[i] = params[i];
        if (!std::isfinite(plus) || !std::isfinite(minus)) {
            throw std::runtime_error("parameter_shift_gradient: loss returned non-finite value");
        }
        grad[i] = (plus - minus) / 2.0;
    }
    return grad;
}

namespace {

int embed_depth(int n_qubits) { return (1 << (n_qubits + 1)) - 2; }

}  // namespace

ResourceReport resource_report(int b, int f, const AnsatzSpec& spec) {
    if (spec.n_layers < 1) throw std::invalid_argument("resource_report: n_layers must be >= 1");
    const int n_b = ceil_log2(b);
    const int n_f = ceil_log2(f);
    ResourceReport r;
    r.qubits = qubits_required(b, f);
    r.trainable_params = spec.n_layers * n_b;
    r.depth = embed_depth(n_b) + spec.n_layers * 2 + (n_f + 2);
    return r;
}

}  // namespace qganf
