// dataprep.hpp
// Price-series ingestion, Hodrick-Prescott smoothing, splitting, scaling,
// windowing and the exact inverse transforms.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qganf {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PriceSeries {
    std::vector<std::string> dates;  // ISO-8601, strictly increasing
    std::vector<double> prices;      // adjusted close, > 0

    std::size_t size() const { return prices.size(); }
};

struct ScalingState {
    double min = 0.0;
    double max = 1.0;
};

struct WindowSpec {
    int b = 3;       // past-window length
    int f = 1;       // future-window length
    int stride = 1;  // step between window starts
    bool overlapped = false;
};

struct WindowPair {
    std::vector<double> past;
    std::vector<double> target;  // length f, or 2f in overlapped mode
    double past_norm = 1.0;      // L2 norm removed when the dataset is normalized
    double target_norm = 1.0;
};

struct WindowedDataset {
    WindowSpec spec;
    ScalingState scaling;
    bool normalized = false;
    std::vector<WindowPair> pairs;
};

struct NormalizationRecovery {
    std::vector<double> a;      // min-max-scaled prices of the overlap
    std::vector<double> y_hat;  // normalized predictions of the overlap
    double factor = 1.0;        // closed-form minimizer of sum (a_i - factor*y_i)^2
    double residual = 0.0;      // objective value at the minimizer
};

// Parses a CSV with header "date,adj_close". Sorts by date, rejects
// duplicate dates, non-positive or non-finite prices (reporting the line).
PriceSeries load_csv(const std::string& path);

PriceSeries parse_csv_text(const std::string& text, const std::string& origin);

// Hodrick-Prescott trend: minimizes sum (y - tau)^2 + lambda * sum (D2 tau)^2,
// solved through the pentadiagonal system (I + lambda D^T D) tau = y.
std::vector<double> hp_filter(const std::vector<double>& prices, double lambda);

// Chronological split; train takes the first floor(ratio * N) points.
std::pair<PriceSeries, PriceSeries> train_test_split(const PriceSeries& series,
                                                     double ratio = 0.8);
std::pair<std::vector<double>, std::vector<double>> train_test_split(
    const std::vector<double>& prices, double ratio = 0.8);

ScalingState minmax_fit(const std::vector<double>& train_prices);
std::vector<double> minmax_apply(const std::vector<double>& prices, const ScalingState& s);
std::vector<double> minmax_invert(const std::vector<double>& scaled, const ScalingState& s);

// Returns (unit vector, L2 norm). Rejects the zero vector.
std::pair<std::vector<double>, double> l2_normalize(const std::vector<double>& window);

// Sliding windows over an already-scaled series.
WindowedDataset make_windows(const std::vector<double>& scaled, const WindowSpec& spec,
                             const ScalingState& scaling = {});

// Invertible-FQGAN windows: targets of length 2f whose first f entries
// duplicate the last f entries of the past window.
WindowedDataset make_overlapped_windows(const std::vector<double>& scaled, int b, int f,
                                        const ScalingState& scaling = {});

// Replaces each past/target with its unit vector, recording the norms.
WindowedDataset l2_normalize_dataset(const WindowedDataset& ds);

// Closed-form recovery of the normalization factor from the overlap.
NormalizationRecovery recover_normalization(const std::vector<double>& a,
                                            const std::vector<double>& y_hat);

// factor * normalized -> inverse min-max -> HP re-smoothing (skipped below
// length 3).
std::vector<double> inverse_pipeline(const std::vector<double>& normalized, double factor,
                                     const ScalingState& scaling, double lambda);

}  // namespace qganf
