#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "qganf/ansatz.hpp"

using namespace qganf;

TEST_CASE("qubits_required") {
    CHECK(qubits_required(16, 8) == 8);
    CHECK(qubits_required(1, 1) == 1);
    CHECK(qubits_required(3, 1) == 3);
    CHECK_THROWS_AS(qubits_required(0, 1), std::invalid_argument);

    SUBCASE("window ladder") {
        CHECK(qubits_required(4, 2) == 4);
        CHECK(qubits_required(8, 4) == 6);
        CHECK(qubits_required(16, 8) == 8);
        CHECK(qubits_required(32, 16) == 10);
    }

    SUBCASE("monotone in both arguments") {
        for (int b = 1; b < 40; ++b) {
            for (int f = 1; f < 40; ++f) {
                CHECK(qubits_required(b + 1, f) >= qubits_required(b, f));
                CHECK(qubits_required(b, f + 1) >= qubits_required(b, f));
            }
        }
    }
}

TEST_CASE("apply_ansatz") {
    SUBCASE("single qubit, zero angle is the identity") {
        AnsatzSpec spec{1, 1};
        StateVector s = apply_ansatz(zero_state(1), spec, {0.0}, {0});
        CHECK(s.amplitudes[0].real() == doctest::Approx(1.0));
    }

    SUBCASE("two qubits: RY then a single CNOT") {
        AnsatzSpec spec{2, 1};
        StateVector s = apply_ansatz(zero_state(2), spec, {std::numbers::pi, 0.0}, {0, 1});
        // Oracle: CNOT * (RY(pi) x RY(0)) |00>.
        auto u = oracle::gate_matrix(2, GateOp::cnot(0, 1));
        auto ry = oracle::kron(oracle::mat_ry(std::numbers::pi), oracle::mat_ry(0.0));
        std::vector<cplx> v{1, 0, 0, 0};
        auto expect = oracle::matvec(u, oracle::matvec(ry, v));
        for (int i = 0; i < 4; ++i) CHECK(std::abs(s.amplitudes[i] - expect[i]) < 1e-12);
        CHECK(std::abs(std::abs(s.amplitudes[3]) - 1.0) < 1e-12);  // |11>
    }

    SUBCASE("zero angles leave only the CNOT ring, L times") {
        std::mt19937_64 rng(3);
        for (int n = 2; n <= 3; ++n) {
            for (int layers = 1; layers <= 3; ++layers) {
                AnsatzSpec spec{n, layers};
                std::vector<int> reg(n);
                for (int q = 0; q < n; ++q) reg[q] = q;
                StateVector in = oracle::random_state(n, rng);
                StateVector got = apply_ansatz(in, spec, std::vector<double>(spec.param_count(), 0.0), reg);

                auto ring = oracle::identity(std::size_t{1} << n);
                auto mul = [&](const GateOp& g) {
                    auto m = oracle::gate_matrix(n, g);
                    oracle::Mat out(ring.size(), std::vector<cplx>(ring.size(), 0.0));
                    for (std::size_t i = 0; i < m.size(); ++i)
                        for (std::size_t k = 0; k < m.size(); ++k)
                            for (std::size_t j = 0; j < m.size(); ++j)
                                out[i][j] += m[i][k] * ring[k][j];
                    ring = out;
                };
                for (int l = 0; l < layers; ++l) {
                    if (n == 2) {
                        mul(GateOp::cnot(0, 1));
                    } else {
                        for (int q = 0; q + 1 < n; ++q) mul(GateOp::cnot(q, q + 1));
                        mul(GateOp::cnot(n - 1, 0));
                    }
                }
                auto expect = oracle::matvec(ring, in.amplitudes);
                for (std::size_t i = 0; i < expect.size(); ++i) {
                    CHECK(std::abs(got.amplitudes[i] - expect[i]) < 1e-10);
                }
            }
        }
    }

    SUBCASE("validation") {
        AnsatzSpec spec{2, 1};
        CHECK_THROWS_AS(apply_ansatz(zero_state(2), spec, {0.0}, {0, 1}),
                        std::invalid_argument);
        CHECK_THROWS_AS(apply_ansatz(zero_state(2), spec, {0.0, 0.0}, {0}),
                        std::invalid_argument);
    }
}

TEST_CASE("parameter_shift_gradient") {
    SUBCASE("cos readout") {
        auto loss = [](const std::vector<double>& theta) {
            StateVector s = apply_gate(zero_state(1), GateOp::ry(0, theta[0]));
            return expectation_z(s, 0);  // cos(theta)
        };
        auto g0 = parameter_shift_gradient(loss, {0.0});
        CHECK(std::abs(g0[0]) < 1e-12);
        auto g1 = parameter_shift_gradient(loss, {std::numbers::pi / 2.0});
        CHECK(g1[0] == doctest::Approx(-1.0).epsilon(1e-10));
    }

    SUBCASE("matches finite differences on random ansatz losses") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> angle(-1.5, 1.5);
        for (int trial = 0; trial < 60; ++trial) {
            AnsatzSpec spec{2, 2};
            std::vector<double> theta(spec.param_count());
            for (double& t : theta) t = angle(rng);
            auto loss = [&](const std::vector<double>& params) {
                StateVector s = apply_ansatz(zero_state(2), spec, params, {0, 1});
                return expectation_z(s, 0);
            };
            const auto grad = parameter_shift_gradient(loss, theta);
            const double h = 1e-5;
            for (std::size_t k = 0; k < theta.size(); ++k) {
                std::vector<double> plus = theta, minus = theta;
                plus[k] += h;
                minus[k] -= h;
                const double fd = (loss(plus) - loss(minus)) / (2.0 * h);
                CHECK(std::abs(grad[k] - fd) < 1e-5);
            }
        }
    }

    SUBCASE("non-finite loss surfaces as an error") {
        auto bad = [](const std::vector<double>&) {
            return std::numeric_limits<double>::quiet_NaN();
        };
        CHECK_THROWS_AS(parameter_shift_gradient(bad, {0.0}), std::runtime_error);
    }
}

TEST_CASE("resource_report") {
    AnsatzSpec spec2{2, 2};
    ResourceReport r = resource_report(4, 2, spec2);
    CHECK(r.qubits == 4);
    CHECK(r.trainable_params == 2 * 2);

    SUBCASE("embed depth at least doubles per added qubit") {
        int prev = 0;
        for (int n = 1; n <= 8; ++n) {
            AnsatzSpec spec{n, 1};
            const int depth = resource_report(1 << n, 1, spec).depth;
            CHECK(depth > prev);
            prev = depth;
        }
    }

    SUBCASE("trainable params scale with layers and generator width") {
        AnsatzSpec spec3{4, 3};
        CHECK(resource_report(16, 2, spec3).trainable_params == 12);
    }

    SUBCASE("ladder qubit counts") {
        AnsatzSpec spec{1, 3};
        CHECK(resource_report(4, 2, spec).qubits == 4);
        CHECK(resource_report(8, 4, spec).qubits == 6);
        CHECK(resource_report(16, 8, spec).qubits == 8);
        CHECK(resource_report(32, 16, spec).qubits == 10);
    }
}
