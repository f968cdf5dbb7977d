#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "qganf/statevector.hpp"

using namespace qganf;

TEST_CASE("zero_state basics") {
    StateVector s1 = zero_state(1);
    CHECK(s1.amplitudes.size() == 2);
    CHECK(s1.amplitudes[0] == cplx{1.0, 0.0});
    CHECK(s1.amplitudes[1] == cplx{0.0, 0.0});

    StateVector s2 = zero_state(2);
    CHECK(s2.amplitudes.size() == 4);
    CHECK(s2.amplitudes[0].real() == doctest::Approx(1.0));

    CHECK_NOTHROW(zero_state(24));
    CHECK_THROWS_AS(zero_state(25), std::invalid_argument);
    CHECK_THROWS_AS(zero_state(0), std::invalid_argument);
}

TEST_CASE("apply_gate single-qubit identities") {
    StateVector s = zero_state(1);
    StateVector flipped = apply_gate(s, GateOp::ry(0, std::numbers::pi));
    CHECK(std::abs(flipped.amplitudes[0]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(flipped.amplitudes[1]) == doctest::Approx(1.0));

    // H twice restores the state.
    std::mt19937_64 rng(7);
    StateVector r = oracle::random_state(3, rng);
    StateVector hh = apply_gate(apply_gate(r, GateOp::h(1)), GateOp::h(1));
    for (std::size_t i = 0; i < r.dim(); ++i) {
        CHECK(std::abs(hh.amplitudes[i] - r.amplitudes[i]) < 1e-12);
    }
}

TEST_CASE("apply_gate validation") {
    StateVector s = zero_state(2);
    CHECK_THROWS_AS(apply_gate(s, GateOp::h(2)), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, GateOp::cnot(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, GateOp::ry(0, std::nan(""))), std::invalid_argument);
}

TEST_CASE("apply_gate agrees with Kronecker-product oracle on random gates") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> kind_dist(0, 7);
    std::uniform_real_distribution<double> angle_dist(-3.0, 3.0);
    const int n = 3;
    for (int trial = 0; trial < 120; ++trial) {
        StateVector s = oracle::random_state(n, rng);
        std::vector<int> qubits{0, 1, 2};
        std::shuffle(qubits.begin(), qubits.end(), rng);
        GateOp gate = GateOp::h(qubits[0]);
        switch (kind_dist(rng)) {
            case 0: gate = GateOp::h(qubits[0]); break;
            case 1: gate = GateOp::x(qubits[0]); break;
            case 2: gate = GateOp::z(qubits[0]); break;
            case 3: gate = GateOp::ry(qubits[0], angle_dist(rng)); break;
            case 4: gate = GateOp::rz(qubits[0], angle_dist(rng)); break;
            case 5: gate = GateOp::cnot(qubits[0], qubits[1]); break;
            case 6: gate = GateOp::cz(qubits[0], qubits[1]); break;
            case 7: gate = GateOp::cswap(qubits[0], qubits[1], qubits[2]); break;
        }
        StateVector got = apply_gate(s, gate);
        const auto expect = oracle::matvec(oracle::gate_matrix(n, gate), s.amplitudes);
        for (std::size_t i = 0; i < got.dim(); ++i) {
            CHECK(std::abs(got.amplitudes[i] - expect[i]) < 1e-10);
        }
        CHECK(std::abs(got.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("angle_encode") {
    StateVector zeros = angle_encode({0.0, 0.0, 0.0});
    CHECK(zeros.amplitudes[0].real() == doctest::Approx(1.0));

    StateVector one = angle_encode({1.0});
    CHECK(std::abs(one.amplitudes[1]) == doctest::Approx(1.0));

    // Matches the per-qubit Kronecker construction.
    StateVector enc = angle_encode({0.5, 0.25});
    const auto m0 = oracle::mat_ry(std::numbers::pi * 0.5);
    const auto m1 = oracle::mat_ry(std::numbers::pi * 0.25);
    const auto u = oracle::kron(m0, m1);
    std::vector<cplx> basis{1, 0, 0, 0};
    const auto expect = oracle::matvec(u, basis);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(enc.amplitudes[i] - expect[i]) < 1e-12);
    }

    CHECK_THROWS_AS(angle_encode({1.5}), std::invalid_argument);
    CHECK_THROWS_AS(angle_encode({-0.1}), std::invalid_argument);
}

TEST_CASE("amplitude_embed") {
    StateVector basis = amplitude_embed({1, 0, 0, 0}, 2);
    CHECK(basis.amplitudes[0].real() == doctest::Approx(1.0));

    StateVector v = amplitude_embed({0.6, 0.8}, 1);
    CHECK(v.amplitudes[0].real() == doctest::Approx(0.6));
    CHECK(v.amplitudes[1].real() == doctest::Approx(0.8));

    StateVector padded = amplitude_embed({0.5, 0.5, 0.5, 0.5}, 3);
    for (int i = 0; i < 4; ++i) CHECK(padded.amplitudes[i].real() == doctest::Approx(0.5));
    for (int i = 4; i < 8; ++i) CHECK(std::abs(padded.amplitudes[i]) == 0.0);

    CHECK_THROWS_AS(amplitude_embed({0.9, 0.9}, 1), std::invalid_argument);
    CHECK_THROWS_AS(amplitude_embed({1, 0, 0}, 1), std::invalid_argument);
}

TEST_CASE("amplitude_embed round trip is exact") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto values = oracle::random_unit_vector(6, rng);
        StateVector s = amplitude_embed(values, 3);
        for (std::size_t i = 0; i < values.size(); ++i) {
            CHECK(std::abs(s.amplitudes[i].real() - values[i]) < 1e-12);
            CHECK(s.amplitudes[i].imag() == 0.0);
        }
    }
}

TEST_CASE("expectation_z") {
    CHECK(expectation_z(zero_state(1), 0) == doctest::Approx(1.0));
    StateVector plus = apply_gate(zero_state(1), GateOp::h(0));
    CHECK(std::abs(expectation_z(plus, 0)) < 1e-12);

    std::mt19937_64 rng(11);
    StateVector r = oracle::random_state(4, rng);
    for (int q = 0; q < 4; ++q) {
        const auto marg = marginal_probabilities(r, {q});
        CHECK(expectation_z(r, q) == doctest::Approx(marg[0] - marg[1]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(expectation_z(r, 4), std::invalid_argument);
}

TEST_CASE("marginal_probabilities") {
    const auto m00 = marginal_probabilities(zero_state(2), {0});
    CHECK(m00[0] == doctest::Approx(1.0));
    CHECK(m00[1] == doctest::Approx(0.0));

    // Bell state.
    StateVector bell = apply_gate(apply_gate(zero_state(2), GateOp::h(0)), GateOp::cnot(0, 1));
    const auto mb = marginal_probabilities(bell, {0});
    CHECK(mb[0] == doctest::Approx(0.5));
    CHECK(mb[1] == doctest::Approx(0.5));

    // Matches brute-force summation over the traced-out bits.
    std::mt19937_64 rng(13);
    StateVector r = oracle::random_state(4, rng);
    const auto marg = marginal_probabilities(r, {1, 3});
    double total = 0.0;
    for (int key = 0; key < 4; ++key) {
        double expect = 0.0;
        for (std::size_t i = 0; i < r.dim(); ++i) {
            const int bit1 = static_cast<int>((i >> 2) & 1);  // qubit 1 of 4 (MSB-first)
            const int bit3 = static_cast<int>(i & 1);         // qubit 3
            if ((bit1 << 1 | bit3) == key) expect += std::norm(r.amplitudes[i]);
        }
        CHECK(marg[key] == doctest::Approx(expect).epsilon(1e-12));
        total += marg[key];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(marginal_probabilities(r, {0, 0}), std::invalid_argument);
}

TEST_CASE("inner_product") {
    std::mt19937_64 rng(17);
    StateVector a = oracle::random_state(3, rng);
    CHECK(std::abs(inner_product(a, a) - cplx{1.0, 0.0}) < 1e-12);

    StateVector k0 = zero_state(1);
    StateVector k1 = apply_gate(k0, GateOp::x(0));
    CHECK(std::abs(inner_product(k0, k1)) < 1e-15);

    for (int trial = 0; trial < 30; ++trial) {
        StateVector p = oracle::random_state(3, rng);
        StateVector q = oracle::random_state(3, rng);
        CHECK(std::abs(inner_product(p, q)) <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(inner_product(a, k0), std::invalid_argument);
}

TEST_CASE("swap_test_fidelity matches the inner-product identity") {
    StateVector k0 = zero_state(1);
    StateVector k1 = apply_gate(k0, GateOp::x(0));
    CHECK(swap_test_fidelity(k0, k0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(swap_test_fidelity(k0, k1) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(23);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            StateVector p = oracle::random_state(n, rng);
            StateVector q = oracle::random_state(n, rng);
            const double overlap = std::norm(inner_product(p, q));
            const double p0 = swap_test_fidelity(p, q);
            CHECK(p0 == doctest::Approx((1.0 + overlap) / 2.0).epsilon(1e-10));
            CHECK(p0 >= 0.5 - 1e-12);
            CHECK(p0 <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("partial_swap_test") {
    std::mt19937_64 rng(29);

    SUBCASE("product of identical registers gives 1") {
        StateVector reg = oracle::random_state(2, rng);
        StateVector joint = tensor_product(tensor_product(reg, reg), zero_state(1));
        const double p0 = partial_swap_test(joint, {0, 1}, {2, 3}, 4);
        CHECK(p0 == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("product of orthogonal registers gives 0.5") {
        StateVector a = zero_state(1);
        StateVector b = apply_gate(a, GateOp::x(0));
        StateVector joint = tensor_product(tensor_product(a, b), zero_state(1));
        CHECK(partial_swap_test(joint, {0}, {1}, 2) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("matches the reduced-density-matrix formula") {
        // Register A is entangled with hidden qubits; register B stays in
        // product with the rest, as in the generator/data layout. That is the
        // regime where P0 = (1 + Tr(rho_A sigma_B)) / 2 holds exactly.
        for (int n_reg = 1; n_reg <= 2; ++n_reg) {
            for (int hidden = 1; hidden <= 2; ++hidden) {
                for (int trial = 0; trial < 15; ++trial) {
                    StateVector body = oracle::random_state(n_reg + hidden, rng);
                    StateVector chi = oracle::random_state(n_reg, rng);
                    StateVector joint =
                        tensor_product(tensor_product(body, chi), zero_state(1));
                    std::vector<int> reg_a, reg_b;
                    for (int q = 0; q < n_reg; ++q) {
                        reg_a.push_back(q);
                        reg_b.push_back(n_reg + hidden + q);
                    }
                    const int ancilla = 2 * n_reg + hidden;
                    const double p0 = partial_swap_test(joint, reg_a, reg_b, ancilla);
                    const auto rho = oracle::reduce_first(body, n_reg);
                    oracle::Mat sigma(chi.dim(), std::vector<cplx>(chi.dim(), 0.0));
                    for (std::size_t i = 0; i < chi.dim(); ++i) {
                        for (std::size_t j = 0; j < chi.dim(); ++j) {
                            sigma[i][j] =
                                chi.amplitudes[i] * std::conj(chi.amplitudes[j]);
                        }
                    }
                    const double expect =
                        (1.0 + oracle::trace_product(rho, sigma)) / 2.0;
                    CHECK(p0 == doctest::Approx(expect).epsilon(1e-10));
                }
            }
        }
    }

    SUBCASE("validation") {
        StateVector joint = zero_state(3);
        CHECK_THROWS_AS(partial_swap_test(joint, {0}, {0}, 2), std::invalid_argument);
        CHECK_THROWS_AS(partial_swap_test(joint, {0, 1}, {2}, 3), std::invalid_argument);
    }
}

TEST_CASE("norm preservation over random gate sequences") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> q_dist(0, 3);
    std::uniform_real_distribution<double> angle_dist(-3.0, 3.0);
    StateVector s = zero_state(4);
    for (int step = 0; step < 200; ++step) {
        const int q = q_dist(rng);
        switch (step % 5) {
            case 0: apply_gate_inplace(s, GateOp::h(q)); break;
            case 1: apply_gate_inplace(s, GateOp::ry(q, angle_dist(rng))); break;
            case 2: apply_gate_inplace(s, GateOp::rz(q, angle_dist(rng))); break;
            case 3: apply_gate_inplace(s, GateOp::cnot(q, (q + 1) % 4)); break;
            case 4: apply_gate_inplace(s, GateOp::cz(q, (q + 2) % 4)); break;
        }
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
}
