#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qganf/features.hpp"

using namespace qganf;

namespace {

std::vector<double> random_series(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> v(50.0, 150.0);
    std::vector<double> out(n);
    for (double& x : out) x = v(rng);
    return out;
}

// Naive O(N^2) DFT truncation, independent of the FFT path.
std::vector<double> dft_truncate_oracle(const std::vector<double>& x, int c) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> spec(n, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int t = 0; t < n; ++t) {
            spec[k] += x[t] * std::exp(std::complex<double>(0, -2.0 * std::numbers::pi * k * t / n));
        }
    }
    std::vector<std::complex<double>> kept(n, 0.0);
    kept[0] = spec[0];
    for (int k = 1; k <= c; ++k) {
        kept[k] = spec[k];
        kept[n - k] = spec[n - k];
    }
    std::vector<double> out(n, 0.0);
    for (int t = 0; t < n; ++t) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += kept[k] * std::exp(std::complex<double>(0, 2.0 * std::numbers::pi * k * t / n));
        }
        out[t] = acc.real() / n;
    }
    return out;
}

}  // namespace

TEST_CASE("moving_average") {
    std::vector<double> constant(10, 7.0);
    const auto ma = moving_average(constant, 3);
    for (int i = 2; i < 10; ++i) CHECK(ma[i] == doctest::Approx(7.0));
    CHECK(std::isnan(ma[0]));
    CHECK(std::isnan(ma[1]));

    const auto ma2 = moving_average({1, 2, 3, 4}, 2);
    CHECK(std::isnan(ma2[0]));
    CHECK(ma2[1] == doctest::Approx(1.5));
    CHECK(ma2[2] == doctest::Approx(2.5));
    CHECK(ma2[3] == doctest::Approx(3.5));

    std::mt19937_64 rng(1);
    const auto series = random_series(60, rng);
    const auto ma7 = moving_average(series, 7);
    for (int i = 6; i < 60; ++i) {
        double sum = 0.0;
        for (int j = i - 6; j <= i; ++j) sum += series[j];
        CHECK(ma7[i] == doctest::Approx(sum / 7.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(moving_average({1.0}, 2), std::invalid_argument);
}

TEST_CASE("ema") {
    std::vector<double> constant(10, 3.0);
    for (double v : ema(constant, 5)) CHECK(v == doctest::Approx(3.0));

    std::mt19937_64 rng(2);
    const auto series = random_series(40, rng);
    CHECK(ema(series, 1) == series);  // alpha = 1

    const auto e12 = ema(series, 12);
    const double alpha = 2.0 / 13.0;
    double expect = series[0];
    CHECK(e12[0] == doctest::Approx(expect));
    for (int i = 1; i < 40; ++i) {
        expect = alpha * series[i] + (1 - alpha) * expect;
        CHECK(e12[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("momentum") {
    std::vector<double> constant(10, 4.0);
    const auto m = momentum(constant, 3);
    for (int i = 3; i < 10; ++i) CHECK(m[i] == doctest::Approx(0.0));

    std::vector<double> arith(10);
    for (int i = 0; i < 10; ++i) arith[i] = 2.0 + 1.5 * i;
    const auto m1 = momentum(arith, 1);
    for (int i = 1; i < 10; ++i) CHECK(m1[i] == doctest::Approx(1.5));

    std::mt19937_64 rng(3);
    const auto series = random_series(30, rng);
    const auto m10 = momentum(series, 10);
    for (int i = 10; i < 30; ++i) {
        CHECK(m10[i] == doctest::Approx(series[i] - series[i - 10]));
    }

    CHECK_THROWS_AS(momentum({1.0, 2.0}, 2), std::invalid_argument);
}

TEST_CASE("fourier_trends") {
    std::mt19937_64 rng(4);

    SUBCASE("full retention reproduces the input") {
        for (int n : {2, 17, 64, 128}) {
            const auto series = random_series(n, rng);
            const auto rec = fourier_trends(series, {n / 2}).front();
            for (int i = 0; i < n; ++i) CHECK(std::abs(rec[i] - series[i]) < 1e-9);
        }
    }

    SUBCASE("single sinusoid survives c = 1") {
        const int n = 64;
        std::vector<double> wave(n);
        for (int i = 0; i < n; ++i) {
            wave[i] = 3.0 + std::sin(2.0 * std::numbers::pi * i / n);
        }
        const auto rec = fourier_trends(wave, {1}).front();
        for (int i = 0; i < n; ++i) CHECK(std::abs(rec[i] - wave[i]) < 1e-9);
    }

    SUBCASE("matches the naive DFT oracle") {
        const auto series = random_series(50, rng);
        const auto rec = fourier_trends(series, {3}).front();
        const auto expect = dft_truncate_oracle(series, 3);
        for (int i = 0; i < 50; ++i) CHECK(std::abs(rec[i] - expect[i]) < 1e-8);
    }

    SUBCASE("more components means lower reconstruction error") {
        const auto series = random_series(80, rng);
        const auto recs = fourier_trends(series, {3, 6, 9});
        double err3 = 0.0, err6 = 0.0, err9 = 0.0;
        for (int i = 0; i < 80; ++i) {
            err3 += (recs[0][i] - series[i]) * (recs[0][i] - series[i]);
            err6 += (recs[1][i] - series[i]) * (recs[1][i] - series[i]);
            err9 += (recs[2][i] - series[i]) * (recs[2][i] - series[i]);
        }
        CHECK(err6 <= err3 + 1e-9);
        CHECK(err9 <= err6 + 1e-9);
    }

    CHECK_THROWS_AS(fourier_trends({1.0, 2.0, 3.0}, {5}), std::invalid_argument);
}

TEST_CASE("feature_matrix") {
    std::mt19937_64 rng(5);

    SUBCASE("constant series gives constant indicator columns") {
        std::vector<double> constant(100, 42.0);
        const FeatureMatrix m = feature_matrix(constant);
        REQUIRE(m.columns.size() == 8);
        for (std::size_t c = 0; c < m.values.size(); ++c) {
            for (double v : m.values[c]) {
                if (m.columns[c] == "momentum") {
                    CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
                } else {
                    CHECK(v == doctest::Approx(42.0).epsilon(1e-9));
                }
            }
        }
    }

    SUBCASE("row alignment: ma7 recomputed per row") {
        const auto series = random_series(120, rng);
        const FeatureMatrix m = feature_matrix(series);
        const std::size_t offset = series.size() - m.rows();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const std::size_t i = r + offset;
            double sum = 0.0;
            for (std::size_t j = i - 6; j <= i; ++j) sum += series[j];
            CHECK(m.values[1][r] == doctest::Approx(sum / 7.0).epsilon(1e-12));
            CHECK(m.values[0][r] == doctest::Approx(series[i]));
        }
    }

    CHECK_THROWS_AS(feature_matrix(std::vector<double>(15, 1.0)), std::invalid_argument);
}
