// features.hpp
// Technical indicators and Fourier-truncated trend features.

#pragma once

#include <string>
#include <vector>

namespace qganf {

// Columns share row alignment with the input series after trimming the
// longest indicator warm-up. Column-major storage.
struct FeatureMatrix {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;  // values[c][row]

    std::size_t rows() const { return values.empty() ? 0 : values[0].size(); }
    std::string to_csv() const;
};

// Trailing simple moving average; the first w-1 entries are NaN (warm-up).
std::vector<double> moving_average(const std::vector<double>& prices, int w);

// Exponential moving average with alpha = 2/(span+1), seeded on the first price.
std::vector<double> ema(const std::vector<double>& prices, int span);

// m_t = p_t - p_{t-k}; the first k entries are NaN (warm-up).
std::vector<double> momentum(const std::vector<double>& prices, int k);

// Keeps the DC term plus the `components` lowest-frequency conjugate pairs of
// the DFT and inverts. One output series per component count.
std::vector<std::vector<double>> fourier_trends(const std::vector<double>& prices,
                                                const std::vector<int>& components);

// Fixed schema: adj_close, ma7, ma21, ema, momentum, fourier_3/6/9.
// Leading warm-up rows are trimmed so every emitted entry is finite.
FeatureMatrix feature_matrix(const std::vector<double>& prices, int ema_span = 12,
                             int momentum_lag = 10);

}  // namespace qganf
