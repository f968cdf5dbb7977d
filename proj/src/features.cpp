#include "qganf/features.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qganf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_series(const std::vector<double>& prices, const char* op) {
    if (prices.empty()) throw std::invalid_argument(std::string(op) + ": empty series");
    for (double p : prices) {
        if (!std::isfinite(p)) throw std::invalid_argument(std::string(op) + ": non-finite input");
    }
}

}  // namespace

std::vector<double> moving_average(const std::vector<double>& prices, int w) {
    check_series(prices, "moving_average");
    if (w < 1) throw std::invalid_argument("moving_average: window must be >= 1");
    if (w > static_cast<int>(prices.size())) {
        throw std::invalid_argument("moving_average: window longer than series");
    }
    std::vector<double> out(prices.size(), kNaN);
    double acc = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        acc += prices[i];
        if (i >= static_cast<std::size_t>(w)) acc -= prices[i - w];
        if (i + 1 >= static_cast<std::size_t>(w)) out[i] = acc / w;
    }
    return out;
}

std::vector<double> ema(const std::vector<double>& prices, int span) {
    check_series(prices, "ema");
    if (span < 1) throw std::invalid_argument("ema: span must be >= 1");
    const double alpha = 2.0 / (span + 1.0);
    std::vector<double> out(prices.size());
    out[0] = prices[0];
    for (std::size_t i = 1; i < prices.size(); ++i) {
        out[i] = alpha * prices[i] + (1.0 - alpha) * out[i - 1];
    }
    return out;
}

std::vector<double> momentum(const std::vector<double>& prices, int k) {
    check_series(prices, "momentum");
    if (k < 1) throw std::invalid_argument("momentum: lag must be >= 1");
    if (k >= static_cast<int>(prices.size())) {
        throw std::invalid_argument("momentum: lag not shorter than series");
    }
    std::vector<double> out(prices.size(), kNaN);
    for (std::size_t i = k; i < prices.size(); ++i) out[i] = prices[i] - prices[i - k];
    return out;
}

std::vector<std::vector<double>> fourier_trends(const std::vector<double>& prices,
                                                const std::vector<int>& components) {
    check_series(prices, "fourier_trends");
    const int n = static_cast<int>(prices.size());
    for (int c : components) {
        if (c < 1 || c > n / 2) {
            throw std::invalid_argument("fourier_trends: component count must be in [1, N/2]");
        }
    }

    std::vector<std::complex<double>> spectrum(n);
    {
        std::vector<std::complex<double>> in(n);
        for (int i = 0; i < n; ++i) in[i] = prices[i];
        fftw_plan plan = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    std::vector<std::vector<double>> out;
    out.reserve(components.size());
    for (int c : components) {
        std::vector<std::complex<double>> kept(n, 0.0);
        kept[0] = spectrum[0];
        for (int k = 1; k <= c; ++k) {
            kept[k] = spectrum[k];
            kept[n - k] = spectrum[n - k];
        }
        std::vector<std::complex<double>> time(n);
        fftw_plan plan = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(kept.data()),
            reinterpret_cast<fftw_complex*>(time.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        std::vector<double> series(n);
        for (int i = 0; i < n; ++i) series[i] = time[i].real() / n;
        out.push_back(std::move(series));
    }
    return out;
}

FeatureMatrix feature_matrix(const std::vector<double>& prices, int ema_span,
                             int momentum_lag) {
    const int warmup = std::max(21 - 1, momentum_lag);
    if (static_cast<int>(prices.size()) <= warmup) {
        throw std::invalid_argument("feature_matrix: series shorter than indicator warm-up");
    }
    std::vector<std::vector<double>> raw;
    raw.push_back(prices);
    raw.push_back(moving_average(prices, 7));
    raw.push_back(moving_average(prices, 21));
    raw.push_back(ema(prices, ema_span));
    raw.push_back(momentum(prices, momentum_lag));
    auto fourier = fourier_trends(prices, {3, 6, 9});
    for (auto& f : fourier) raw.push_back(std::move(f));

    FeatureMatrix m;
    m.columns = {"adj_close", "ma7",       "ma21",      "ema",
                 "momentum",  "fourier_3", "fourier_6", "fourier_9"};
    for (auto& col : raw) {
        m.values.emplace_back(col.begin() + warmup, col.end());
    }
    for (const auto& col : m.values) {
        for (double v : col) {
            if (!std::isfinite(v)) {
                throw std::logic_error("feature_matrix: non-finite entry after warm-up trim");
            }
        }
    }
    return m;
}

std::string FeatureMatrix::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
    }
    out << "\n";
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < values.size(); ++c) {
            out << (c ? "," : "") << values[c][r];
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qganf
