// metrics.hpp
// RMSE / MAE / R^2 and the window-size sweep harness.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qganf/engines.hpp"

namespace qganf {

double rmse(const std::vector<double>& pred, const std::vector<double>& truth);
double mae(const std::vector<double>& pred, const std::vector<double>& truth);
// 1 - SS_res / SS_tot; rejects constant truth.
double r2(const std::vector<double>& pred, const std::vector<double>& truth);

struct MetricsReport {
    double rmse = 0.0;
    double mae = 0.0;
    double r2 = 0.0;
    int n = 0;
    std::string split;
    std::string kind;
    int b = 0;
    int f = 0;
};

MetricsReport compute_metrics(const std::vector<std::vector<double>>& pred_windows,
                              const std::vector<std::vector<double>>& true_windows);

struct SweepRow {
    std::string kind;
    int b = 0;
    int f = 0;
    std::string split;
    int n_pairs = 0;
    double rmse = 0.0;
    double mae = 0.0;
    double r2 = 0.0;
    std::string error;  // empty on success
};

// Deterministic but decorrelated per-cell seed.
std::uint64_t cell_seed(std::uint64_t base_seed, int b, int f, ModelKind kind);

// Full prepare -> train -> predict -> metrics run for one sweep cell; emits
// train and test rows.
std::vector<SweepRow> run_sweep_cell(const std::vector<double>& prices,
                                     const TrainConfig& base, double split_ratio, int b,
                                     int f, ModelKind kind);

// Grid over windows x kinds; failed cells are recorded and the sweep continues.
std::vector<SweepRow> window_sweep(const std::vector<double>& prices, const TrainConfig& base,
                                   double split_ratio,
                                   const std::vector<std::pair<int, int>>& windows,
                                   const std::vector<ModelKind>& kinds);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace qganf
