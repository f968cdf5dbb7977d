#include "qganf/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qganf {

namespace {

// Shift amount for qubit q in an n-qubit register (qubit 0 = MSB).
inline int bit_shift(int n_qubits, int q) { return n_qubits - 1 - q; }

inline std::size_t bit_mask(int n_qubits, int q) {
    return std::size_t{1} << bit_shift(n_qubits, q);
}

void check_targets(const StateVector& state, const GateOp& gate) {
    int expected = 1;
    switch (gate.kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
            expected = 2;
            break;
        case GateKind::CSWAP:
            expected = 3;
            break;
        default:
            expected = 1;
    }
    if (gate.arity() != expected) {
        throw std::invalid_argument("gate arity mismatch: expected " +
                                    std::to_string(expected) + " targets, got " +
                                    std::to_string(gate.arity()));
    }
    for (std::size_t i = 0; i < gate.targets.size(); ++i) {
        int q = gate.targets[i];
        if (q < 0 || q >= state.n_qubits) {
            throw std::invalid_argument("gate target " + std::to_string(q) +
                                        " out of range for " +
                                        std::to_string(state.n_qubits) + " qubits");
        }
        for (std::size_t j = i + 1; j < gate.targets.size(); ++j) {
            if (gate.targets[j] == q) {
                throw std::invalid_argument("gate targets must be distinct");
            }
        }
    }
    if ((gate.kind == GateKind::RY || gate.kind == GateKind::RZ) &&
        !std::isfinite(gate.angle)) {
        throw std::invalid_argument("rotation angle must be finite");
    }
}

// Applies a 2x2 unitary to one qubit.
void apply_single(StateVector& state, int q, cplx u00, cplx u01, cplx u10, cplx u11) {
    const std::size_t mask = bit_mask(state.n_qubits, q);
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const cplx a0 = state.amplitudes[i];
        const cplx a1 = state.amplitudes[i | mask];
        state.amplitudes[i] = u00 * a0 + u01 * a1;
        state.amplitudes[i | mask] = u10 * a0 + u11 * a1;
    }
}

}  // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    s.amplitudes[0] = cplx{1.0, 0.0};
    return s;
}

void apply_gate_inplace(StateVector& state, const GateOp& gate) {
    check_targets(state, gate);
    const int n = state.n_qubits;
    const std::size_t dim = state.dim();
    constexpr double inv_sqrt2 = 0.7071067811865475244;

    switch (gate.kind) {
        case GateKind::H:
            apply_single(state, gate.targets[0], inv_sqrt2, inv_sqrt2, inv_sqrt2,
                         -inv_sqrt2);
            break;
        case GateKind::X:
            apply_single(state, gate.targets[0], 0, 1, 1, 0);
            break;
        case GateKind::Z:
            apply_single(state, gate.targets[0], 1, 0, 0, -1);
            break;
        case GateKind::RY: {
            const double c = std::cos(gate.angle / 2.0);
            const double s = std::sin(gate.angle / 2.0);
            apply_single(state, gate.targets[0], c, -s, s, c);
            break;
        }
        case GateKind::RZ: {
            const cplx em{std::cos(gate.angle / 2.0), -std::sin(gate.angle / 2.0)};
            apply_single(state, gate.targets[0], em, 0, 0, std::conj(em));
            break;
        }
        case GateKind::CNOT: {
            const std::size_t cm = bit_mask(n, gate.targets[0]);
            const std::size_t tm = bit_mask(n, gate.targets[1]);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & cm) && !(i & tm)) {
                    std::swap(state.amplitudes[i], state.amplitudes[i | tm]);
                }
            }
            break;
        }
        case GateKind::CZ: {
            const std::size_t cm = bit_mask(n, gate.targets[0]);
            const std::size_t tm = bit_mask(n, gate.targets[1]);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & cm) && (i & tm)) state.amplitudes[i] = -state.amplitudes[i];
            }
            break;
        }
        case GateKind::CSWAP: {
            const std::size_t cm = bit_mask(n, gate.targets[0]);
            const std::size_t am = bit_mask(n, gate.targets[1]);
            const std::size_t bm = bit_mask(n, gate.targets[2]);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & cm) && (i & am) && !(i & bm)) {
                    std::swap(state.amplitudes[i], state.amplitudes[(i ^ am) | bm]);
                }
            }
            break;
        }
    }
}

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
    StateVector out = state;
    apply_gate_inplace(out, gate);
    return out;
}

StateVector angle_encode(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw std::invalid_argument("angle_encode values must be finite and in [0, 1]");
        }
    }
    StateVector s = zero_state(n);
    for (int q = 0; q < n; ++q) {
        apply_gate_inplace(s, GateOp::ry(q, std::numbers::pi * values[q]));
    }
    return s;
}

StateVector amplitude_embed(const std::vector<double>& values, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("amplitude_embed: bad qubit count");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (values.size() > dim) {
        throw std::invalid_argument("amplitude_embed: vector longer than 2^n_qubits");
    }
    double norm_sq = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("amplitude_embed: non-finite value");
        norm_sq += v * v;
    }
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-8) {
        throw std::invalid_argument("amplitude_embed: input must have unit L2 norm");
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.amplitudes[i] = cplx{values[i], 0.0};
    }
    return s;
}

double expectation_z(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits) {
        throw std::invalid_argument("expectation_z: bad qubit index");
    }
    const std::size_t mask = bit_mask(state.n_qubits, qubit);
    double value = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= state.n_qubits) {
            throw std::invalid_argument("marginal_probabilities: bad qubit index");
        }
        for (std::size_t j = i + 1; j < qubits.size(); ++j) {
            if (qubits[j] == qubits[i]) {
                throw std::invalid_argument("marginal_probabilities: duplicate qubit index");
            }
        }
    }
    const int m = static_cast<int>(qubits.size());
    std::vector<double> probs(std::size_t{1} << m, 0.0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        std::size_t key = 0;
        for (int k = 0; k < m; ++k) {
            key = (key << 1) | ((i >> bit_shift(state.n_qubits, qubits[k])) & 1);
        }
        probs[key] += std::norm(state.amplitudes[i]);
    }
    return probs;
}

cplx inner_product(const StateVector& psi, const StateVector& phi) {
    if (psi.n_qubits != phi.n_qubits) {
        throw std::invalid_argument("inner_product: size mismatch");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        acc += std::conj(psi.amplitudes[i]) * phi.amplitudes[i];
    }
    return acc;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits + b.n_qubits > kMaxQubits) {
        throw std::invalid_argument("tensor_product: qubit cap exceeded");
    }
    StateVector out;
    out.n_qubits = a.n_qubits + b.n_qubits;
    out.amplitudes.resize(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out.amplitudes[i * b.dim() + j] = a.amplitudes[i] * b.amplitudes[j];
        }
    }
    return out;
}

double swap_test_fidelity(const StateVector& psi, const StateVector& phi) {
    if (psi.n_qubits != phi.n_qubits) {
        throw std::invalid_argument("swap_test_fidelity: size mismatch");
    }
    const int n = psi.n_qubits;
    // Ancilla is qubit 0, psi occupies 1..n, phi occupies n+1..2n.
    StateVector anc = zero_state(1);
    StateVector joint = tensor_product(tensor_product(anc, psi), phi);
    apply_gate_inplace(joint, GateOp::h(0));
    for (int q = 0; q < n; ++q) {
        apply_gate_inplace(joint, GateOp::cswap(0, 1 + q, 1 + n + q));
    }
    apply_gate_inplace(joint, GateOp::h(0));
    return marginal_probabilities(joint, {0})[0];
}

double partial_swap_test(const StateVector& joint, const std::vector<int>& register_a,
                         const std::vector<int>& register_b, int ancilla) {
    if (register_a.size() != register_b.size()) {
        throw std::invalid_argument("partial_swap_test: register size mismatch");
    }
    std::vector<int> all = register_a;
    all.insert(all.end(), register_b.begin(), register_b.end());
    all.push_back(ancilla);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i] < 0 || all[i] >= joint.n_qubits) {
            throw std::invalid_argument("partial_swap_test: qubit index out of range");
        }
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[j] == all[i]) {
                throw std::invalid_argument("partial_swap_test: overlapping registers");
            }
        }
    }
    StateVector work = joint;
    apply_gate_inplace(work, GateOp::h(ancilla));
    for (std::size_t i = 0; i < register_a.size(); ++i) {
        apply_gate_inplace(work, GateOp::cswap(ancilla, register_a[i], register_b[i]));
    }
    apply_gate_inplace(work, GateOp::h(ancilla));
    return marginal_probabilities(work, {ancilla})[0];
}

}  // namespace qganf
