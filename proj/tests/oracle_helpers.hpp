// Test-only oracles: dense Kronecker-product gate matrices, brute-force
// partial traces and random state generation. Kept independent of the
// simulator's gate kernels.

#pragma once

#include <complex>
#include <map>
#include <random>
#include <vector>

#include "qganf/statevector.hpp"

namespace oracle {

using qganf::cplx;
using Mat = std::vector<std::vector<cplx>>;

inline Mat identity(std::size_t dim) {
    Mat m(dim, std::vector<cplx>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    const std::size_t ra = a.size(), rb = b.size();
    Mat out(ra * rb, std::vector<cplx>(ra * rb, 0.0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < rb; ++l)
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return out;
}

inline Mat add(const Mat& a, const Mat& b) {
    Mat out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
    return out;
}

inline Mat scale(const Mat& a, cplx s) {
    Mat out = a;
    for (auto& row : out)
        for (auto& v : row) v *= s;
    return out;
}

// Elementary 2x2 blocks.
inline Mat mat_i() { return {{1, 0}, {0, 1}}; }
inline Mat mat_x() { return {{0, 1}, {1, 0}}; }
inline Mat mat_y() { return {{0, cplx(0, -1)}, {cplx(0, 1), 0}}; }
inline Mat mat_z() { return {{1, 0}, {0, -1}}; }
inline Mat mat_h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}
inline Mat mat_p0() { return {{1, 0}, {0, 0}}; }
inline Mat mat_p1() { return {{0, 0}, {0, 1}}; }
inline Mat mat_ry(double t) {
    return {{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}};
}
inline Mat mat_rz(double t) {
    return {{std::exp(cplx(0, -t / 2)), 0}, {0, std::exp(cplx(0, t / 2))}};
}

// Kronecker product over all qubits, with the 2x2 factor at each listed
// qubit and identity elsewhere. Qubit 0 is the leftmost (most significant)
// factor, matching the simulator's basis-index convention.
inline Mat kron_op(int n_qubits, const std::map<int, Mat>& factors) {
    Mat out = {{1}};
    for (int q = 0; q < n_qubits; ++q) {
        auto it = factors.find(q);
        out = kron(out, it == factors.end() ? mat_i() : it->second);
    }
    return out;
}

inline Mat gate_matrix(int n_qubits, const qganf::GateOp& gate) {
    using qganf::GateKind;
    switch (gate.kind) {
        case GateKind::H: return kron_op(n_qubits, {{gate.targets[0], mat_h()}});
        case GateKind::X: return kron_op(n_qubits, {{gate.targets[0], mat_x()}});
        case GateKind::Z: return kron_op(n_qubits, {{gate.targets[0], mat_z()}});
        case GateKind::RY: return kron_op(n_qubits, {{gate.targets[0], mat_ry(gate.angle)}});
        case GateKind::RZ: return kron_op(n_qubits, {{gate.targets[0], mat_rz(gate.angle)}});
        case GateKind::CNOT: {
            const int c = gate.targets[0], t = gate.targets[1];
            return add(kron_op(n_qubits, {{c, mat_p0()}}),
                       kron_op(n_qubits, {{c, mat_p1()}, {t, mat_x()}}));
        }
        case GateKind::CZ: {
            const int c = gate.targets[0], t = gate.targets[1];
            return add(kron_op(n_qubits, {{c, mat_p0()}}),
                       kron_op(n_qubits, {{c, mat_p1()}, {t, mat_z()}}));
        }
        case GateKind::CSWAP: {
            // SWAP = (II + XX + YY + ZZ) / 2 on the two swapped qubits.
            const int c = gate.targets[0], a = gate.targets[1], b = gate.targets[2];
            Mat swap_part = kron_op(n_qubits, {{c, mat_p1()}});
            swap_part = add(swap_part,
                            kron_op(n_qubits, {{c, mat_p1()}, {a, mat_x()}, {b, mat_x()}}));
            swap_part = add(swap_part,
                            kron_op(n_qubits, {{c, mat_p1()}, {a, mat_y()}, {b, mat_y()}}));
            swap_part = add(swap_part,
                            kron_op(n_qubits, {{c, mat_p1()}, {a, mat_z()}, {b, mat_z()}}));
            return add(kron_op(n_qubits, {{c, mat_p0()}}), scale(swap_part, 0.5));
        }
    }
    return identity(std::size_t{1} << n_qubits);
}

inline std::vector<cplx> matvec(const Mat& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline qganf::StateVector random_state(int n_qubits, std::mt19937_64& rng) {
    qganf::StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.resize(std::size_t{1} << n_qubits);
    std::normal_distribution<double> normal(0.0, 1.0);
    double norm_sq = 0.0;
    for (auto& a : s.amplitudes) {
        a = cplx(normal(rng), normal(rng));
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : s.amplitudes) a *= inv;
    return s;
}

inline std::vector<double> random_unit_vector(int len, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    std::vector<double> v(len);
    double norm_sq = 0.0;
    for (double& x : v) {
        x = uni(rng);
        norm_sq += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
    return v;
}

// Brute-force reduced density matrices of a bipartite state where register A
// holds the leading n_a qubits and register B the trailing n_b qubits.
inline Mat reduce_first(const qganf::StateVector& s, int n_a) {
    const std::size_t da = std::size_t{1} << n_a;
    const std::size_t db = s.dim() / da;
    Mat rho(da, std::vector<cplx>(da, 0.0));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                rho[i][j] += s.amplitudes[i * db + k] * std::conj(s.amplitudes[j * db + k]);
    return rho;
}

inline Mat reduce_last(const qganf::StateVector& s, int n_b) {
    const std::size_t db = std::size_t{1} << n_b;
    const std::size_t da = s.dim() / db;
    Mat rho(db, std::vector<cplx>(db, 0.0));
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k)
                rho[i][j] += s.amplitudes[k * db + i] * std::conj(s.amplitudes[k * db + j]);
    return rho;
}

inline double trace_product(const Mat& rho, const Mat& sigma) {
    cplx tr = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        for (std::size_t j = 0; j < rho.size(); ++j) tr += rho[i][j] * sigma[j][i];
    return tr.real();
}

}  // namespace oracle
