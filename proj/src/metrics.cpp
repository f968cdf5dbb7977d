#include "qganf/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qganf {

namespace {

void check_pair(const std::vector<double>& pred, const std::vector<double>& truth,
                const char* op) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument(std::string(op) + ": length mismatch");
    }
    if (pred.empty()) throw std::invalid_argument(std::string(op) + ": empty input");
}

}  // namespace

double rmse(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_pair(pred, truth, "rmse");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(pred.size()));
}

double mae(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_pair(pred, truth, "mae");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::abs(pred[i] - truth[i]);
    return acc / static_cast<double>(pred.size());
}

double r2(const std::vector<double>& pred, const std::vector<double>& truth) {
    check_pair(pred, truth, "r2");
    double mean = 0.0;
    for (double t : truth) mean += t;
    mean /= static_cast<double>(truth.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ss_res += (pred[i] - truth[i]) * (pred[i] - truth[i]);
        ss_tot += (truth[i] - mean) * (truth[i] - mean);
    }
    if (ss_tot == 0.0) throw std::invalid_argument("r2: truth is constant");
    return 1.0 - ss_res / ss_tot;
}

MetricsReport compute_metrics(const std::vector<std::vector<double>>& pred_windows,
                              const std::vector<std::vector<double>>& true_windows) {
    if (pred_windows.size() != true_windows.size()) {
        throw std::invalid_argument("compute_metrics: window count mismatch");
    }
    std::vector<double> pred, truth;
    for (std::size_t w = 0; w < pred_windows.size(); ++w) {
        pred.insert(pred.end(), pred_windows[w].begin(), pred_windows[w].end());
        truth.insert(truth.end(), true_windows[w].begin(), true_windows[w].end());
    }
    MetricsReport m;
    m.rmse = rmse(pred, truth);
    m.mae = mae(pred, truth);
    m.r2 = r2(pred, truth);
    m.n = static_cast<int>(pred.size());
    return m;
}

std::uint64_t cell_seed(std::uint64_t base_seed, int b, int f, ModelKind kind) {
    // FNV-1a over the cell coordinates.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xFF;
            h *= 1099511628211ULL;
        }
    };
    mix(base_seed);
    mix(static_cast<std::uint64_t>(b));
    mix(static_cast<std::uint64_t>(f));
    mix(static_cast<std::uint64_t>(kind));
    return h;
}

std::vector<SweepRow> run_sweep_cell(const std::vector<double>& prices,
                                     const TrainConfig& base, double split_ratio, int b,
                                     int f, ModelKind kind) {
    const std::vector<double> trend = hp_filter(prices, base.hp_lambda);
    auto [train_prices, test_prices] = train_test_split(trend, split_ratio);
    const ScalingState scaling = minmax_fit(train_prices);
    const std::vector<double> scaled_train = minmax_apply(train_prices, scaling);
    const std::vector<double> scaled_test = minmax_apply(test_prices, scaling);

    TrainConfig cfg = base;
    cfg.kind = kind;
    cfg.window.b = b;
    cfg.window.f = f;
    cfg.seed = cell_seed(base.seed, b, f, kind);

    WindowSpec spec = cfg.window;
    WindowedDataset ds_train, ds_test;
    ModelArtifact artifact;

    switch (kind) {
        case ModelKind::SimpleGan: {
            ds_train = make_windows(scaled_train, spec, scaling);
            ds_test = make_windows(scaled_test, spec, scaling);
            artifact = train_simple_gan(ds_train, cfg);
            break;
        }
        case ModelKind::GanTi: {
            const FeatureMatrix features = feature_matrix(trend);
            // Scale every feature column with bounds fitted on the train rows.
            const std::size_t n_train_rows =
                features.rows() > (trend.size() - train_prices.size())
                    ? features.rows() - (trend.size() - train_prices.size())
                    : 1;
            FeatureMatrix scaled = features;
            for (std::size_t c = 0; c < scaled.values.size(); ++c) {
                auto& col = scaled.values[c];
                if (c == 0) {
                    // Close column shares the global price scaling so the
                    // inverse transform of predictions stays exact.
                    col = minmax_apply(col, scaling);
                } else {
                    const std::vector<double> head(col.begin(), col.begin() + n_train_rows);
                    col = minmax_apply(col, minmax_fit(head));
                }
            }
            FeatureMatrix train_part, test_part;
            train_part.columns = test_part.columns = scaled.columns;
            for (const auto& col : scaled.values) {
                train_part.values.emplace_back(col.begin(), col.begin() + n_train_rows);
                test_part.values.emplace_back(col.begin() + n_train_rows, col.end());
            }
            // Targets use the scaled close column; its bounds come from the close fit.
            ds_train = make_feature_windows(train_part, spec, scaling);
            ds_test = make_feature_windows(test_part, spec, scaling);
            artifact = train_gan_ti(ds_train, cfg);
            break;
        }
        case ModelKind::HybridQgan: {
            ds_train = make_windows(scaled_train, spec, scaling);
            ds_test = make_windows(scaled_test, spec, scaling);
            artifact = train_hybrid_qgan(ds_train, cfg);
            break;
        }
        case ModelKind::Fqgan: {
            ds_train = l2_normalize_dataset(make_windows(scaled_train, spec, scaling));
            ds_test = l2_normalize_dataset(make_windows(scaled_test, spec, scaling));
            artifact = train_fqgan(ds_train, cfg);
            break;
        }
        case ModelKind::InvertibleFqgan: {
            ds_train =
                l2_normalize_dataset(make_overlapped_windows(scaled_train, b, f, scaling));
            ds_test = l2_normalize_dataset(make_overlapped_windows(scaled_test, b, f, scaling));
            artifact = train_invertible_fqgan(ds_train, cfg);
            break;
        }
    }

    std::vector<SweepRow> rows;
    for (const auto& [split, ds] :
         {std::pair<std::string, const WindowedDataset*>{"train", &ds_train},
          std::pair<std::string, const WindowedDataset*>{"test", &ds_test}}) {
        const MetricsReport m = compute_metrics(predict(artifact, *ds), true_prices(*ds));
        SweepRow row;
        row.kind = to_string(kind);
        row.b = b;
        row.f = f;
        row.split = split;
        row.n_pairs = static_cast<int>(ds->pairs.size());
        row.rmse = m.rmse;
        row.mae = m.mae;
        row.r2 = m.r2;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> window_sweep(const std::vector<double>& prices, const TrainConfig& base,
                                   double split_ratio,
                                   const std::vector<std::pair<int, int>>& windows,
                                   const std::vector<ModelKind>& kinds) {
    if (windows.empty()) throw std::invalid_argument("window_sweep: empty window list");
    if (kinds.empty()) throw std::invalid_argument("window_sweep: empty kind list");
    std::vector<SweepRow> rows;
    for (ModelKind kind : kinds) {
        for (const auto& [b, f] : windows) {
            try {
                auto cell = run_sweep_cell(prices, base, split_ratio, b, f, kind);
                rows.insert(rows.end(), cell.begin(), cell.end());
            } catch (const std::exception& e) {
                SweepRow row;
                row.kind = to_string(kind);
                row.b = b;
                row.f = f;
                row.split = "error";
                row.rmse = row.mae = row.r2 = std::numeric_limits<double>::quiet_NaN();
                row.error = e.what();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "kind,b,f,split,n_pairs,rmse,mae,r2,error\n";
    for (const SweepRow& r : rows) {
        out << r.kind << ',' << r.b << ',' << r.f << ',' << r.split << ',' << r.n_pairs << ','
            << r.rmse << ',' << r.mae << ',' << r.r2 << ',' << r.error << '\n';
    }
    return out.str();
}

nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        j.push_back({{"kind", r.kind},
                     {"b", r.b},
                     {"f", r.f},
                     {"split", r.split},
                     {"n_pairs", r.n_pairs},
                     {"rmse", r.rmse},
                     {"mae", r.mae},
                     {"r2", r.r2},
                     {"error", r.error}});
    }
    return j;
}

}  // namespace qganf
