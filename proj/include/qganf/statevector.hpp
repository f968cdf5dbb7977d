// statevector.hpp
// Dense statevector simulation: state preparation, gates, observables and
// SWAP-test fidelity estimation.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qganf {

using cplx = std::complex<double>;

// Qubit 0 is the most significant bit of the basis index, so a basis label
// |q0 q1 ... q_{n-1}> reads left to right.
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

// Hard cap on register width; bounds memory to ~256 MB of complex doubles.
inline constexpr int kMaxQubits = 24;

enum class GateKind { H, X, Z, RY, RZ, CNOT, CZ, CSWAP };

struct GateOp {
    GateKind kind;
    std::vector<int> targets;
    double angle = 0.0;  // rotation gates only

    static GateOp h(int q) { return {GateKind::H, {q}}; }
    static GateOp x(int q) { return {GateKind::X, {q}}; }
    static GateOp z(int q) { return {GateKind::Z, {q}}; }
    static GateOp ry(int q, double theta) { return {GateKind::RY, {q}, theta}; }
    static GateOp rz(int q, double theta) { return {GateKind::RZ, {q}, theta}; }
    static GateOp cnot(int c, int t) { return {GateKind::CNOT, {c, t}}; }
    static GateOp cz(int c, int t) { return {GateKind::CZ, {c, t}}; }
    static GateOp cswap(int c, int a, int b) { return {GateKind::CSWAP, {c, a, b}}; }

    int arity() const { return static_cast<int>(targets.size()); }
};

// |0...0> on n_qubits qubits. Throws std::invalid_argument outside 1..24.
StateVector zero_state(int n_qubits);

// Returns the state with the gate's unitary applied. Validates targets and angle.
StateVector apply_gate(const StateVector& state, const GateOp& gate);

// In-place variant used by circuit builders; same validation.
void apply_gate_inplace(StateVector& state, const GateOp& gate);

// Encodes values[i] in [0,1] as RY(pi * values[i]) on qubit i of |0...0>.
StateVector angle_encode(const std::vector<double>& values);

// Writes a unit-norm real vector into the leading amplitudes, zero-padding the rest.
StateVector amplitude_embed(const std::vector<double>& values, int n_qubits);

// Exact <Z> on one qubit.
double expectation_z(const StateVector& state, int qubit);

// Probabilities of computational-basis outcomes on an ordered qubit subset.
// The first listed qubit is the most significant bit of the outcome index.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits);

// <psi|phi> by direct summation.
cplx inner_product(const StateVector& psi, const StateVector& phi);

// Tensor product; a's qubits come first (most significant).
StateVector tensor_product(const StateVector& a, const StateVector& b);

// Circuit-level SWAP test over an ancilla plus both registers.
// Returns exact P(ancilla = 0) = (1 + |<psi|phi>|^2) / 2.
double swap_test_fidelity(const StateVector& psi, const StateVector& phi);

// SWAP test between two equal-size sub-registers of a joint state, using the
// given ancilla qubit. Returns P(ancilla = 0) = (1 + Tr(rho_A rho_B)) / 2.
double partial_swap_test(const StateVector& joint,
                         const std::vector<int>& register_a,
                         const std::vector<int>& register_b,
                         int ancilla);

}  // namespace qganf
