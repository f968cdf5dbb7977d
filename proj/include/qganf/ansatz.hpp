// ansatz.hpp
// Variational-circuit ansatz, parameter-shift differentiation and quantum
// resource accounting.

#pragma once

#include <functional>
#include <vector>

#include "qganf/statevector.hpp"

namespace qganf {

// Hardware-efficient ansatz: per layer, one RY on every register qubit
// followed by a CNOT ring.
struct AnsatzSpec {
    int n_qubits = 1;
    int n_layers = 1;

    int param_count() const { return n_layers * n_qubits; }
};

struct ResourceReport {
    int qubits = 0;
    int depth = 0;
    int trainable_params = 0;
};

// Qubit budget for a (past b, future f) window pair:
// ceil(log2 b) + ceil(log2 f) + 1 ancilla.
int qubits_required(int b, int f);

int ceil_log2(int x);

// Applies the ansatz to a register subset of a (possibly larger) state.
// Gate order per layer: RY on register qubits ascending, then the CNOT ring
// (single CNOT for two qubits, none for one).
StateVector apply_ansatz(const StateVector& state, const AnsatzSpec& spec,
                         const std::vector<double>& params,
                         const std::vector<int>& reg);

// Central parameter-shift rule with +-pi/2 shifts; exact for expectation
// values of RY-generated circuits.
std::vector<double> parameter_shift_gradient(
    const std::function<double(const std::vector<double>&)>& loss_fn,
    const std::vector<double>& params);

// Depth model constants: amplitude embedding 2^(n+1)-2, ansatz 2 per layer,
// SWAP test n_f + 2. Declared convention, reported as-is.
ResourceReport resource_report(int b, int f, const AnsatzSpec& spec);

}  // namespace qganf
