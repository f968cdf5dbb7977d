#include "qganf/dataprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qganf {

namespace {

bool looks_like_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

PriceSeries parse_csv_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "date,adj_close") {
        throw DataError(origin + ": expected header \"date,adj_close\"");
    }
    std::vector<std::pair<std::string, double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw DataError(origin + " line " + std::to_string(line_no) + ": missing comma");
        }
        const std::string date = line.substr(0, comma);
        const std::string price_str = line.substr(comma + 1);
        if (!looks_like_iso_date(date)) {
            throw DataError(origin + " line " + std::to_string(line_no) +
                            ": date not ISO-8601: \"" + date + "\"");
        }
        double price = 0.0;
        try {
            std::size_t consumed = 0;
            price = std::stod(price_str, &consumed);
            if (consumed != price_str.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw DataError(origin + " line " + std::to_string(line_no) +
                            ": malformed price \"" + price_str + "\"");
        }
        if (!std::isfinite(price) || price <= 0.0) {
            throw DataError(origin + " line " + std::to_string(line_no) +
                            ": price must be finite and > 0, got " + price_str);
        }
        rows.emplace_back(date, price);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    PriceSeries series;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].first == rows[i - 1].first) {
            throw DataError(origin + ": duplicate date " + rows[i].first);
        }
        series.dates.push_back(rows[i].first);
        series.prices.push_back(rows[i].second);
    }
    return series;
}

PriceSeries load_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_csv_text(buf.str(), path);
}

std::vector<double> hp_filter(const std::vector<double>& prices, double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw DataError("hp_filter: lambda must be finite and >= 0");
    }
    for (double p : prices) {
        if (!std::isfinite(p)) throw DataError("hp_filter: non-finite input");
    }
    if (lambda == 0.0) return prices;
    const int n = static_cast<int>(prices.size());
    if (n < 3) throw DataError("hp_filter: need at least 3 points for lambda > 0");

    // Bands of A = I + lambda * D^T D (symmetric, bandwidth 2).
    std::vector<double> diag(n, 1.0), off1(n - 1, 0.0), off2(n - 2, 0.0);
    for (int k = 0; k + 2 < n; ++k) {
        // Row k of D has entries (1, -2, 1) at columns k, k+1, k+2.
        diag[k] += lambda * 1.0;
        diag[k + 1] += lambda * 4.0;
        diag[k + 2] += lambda * 1.0;
        off1[k] += lambda * -2.0;
        off1[k + 1] += lambda * -2.0;
        off2[k] += lambda * 1.0;
    }

    // Banded Cholesky A = L L^T with L bands l0 (diag), l1, l2.
    std::vector<double> l0(n), l1(n > 1 ? n - 1 : 0), l2(n > 2 ? n - 2 : 0);
    for (int i = 0; i < n; ++i) {
        double li2 = 0.0, li1 = 0.0;
        if (i >= 2) {
            li2 = off2[i - 2] / l0[i - 2];
            l2[i - 2] = li2;
        }
        if (i >= 1) {
            double num = off1[i - 1];
            if (i >= 2) num -= li2 * l1[i - 2];
            li1 = num / l0[i - 1];
            l1[i - 1] = li1;
        }
        l0[i] = std::sqrt(diag[i] - li1 * li1 - li2 * li2);
    }

    // Solve L z = y, then L^T tau = z.
    std::vector<double> z(n), tau(n);
    for (int i = 0; i < n; ++i) {
        double v = prices[i];
        if (i >= 1) v -= l1[i - 1] * z[i - 1];
        if (i >= 2) v -= l2[i - 2] * z[i - 2];
        z[i] = v / l0[i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = z[i];
        if (i + 1 < n) v -= l1[i] * tau[i + 1];
        if (i + 2 < n) v -= l2[i] * tau[i + 2];
        tau[i] = v / l0[i];
    }
    return tau;
}

std::pair<std::vector<double>, std::vector<double>> train_test_split(
    const std::vector<double>& prices, double ratio) {
    const std::size_t n = prices.size();
    if (n < 10) throw DataError("train_test_split: series too short (need >= 10)");
    if (!(ratio > 0.0 && ratio < 1.0)) throw DataError("train_test_split: ratio must be in (0, 1)");
    const std::size_t n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
    return {{prices.begin(), prices.begin() + n_train}, {prices.begin() + n_train, prices.end()}};
}

std::pair<PriceSeries, PriceSeries> train_test_split(const PriceSeries& series, double ratio) {
    auto [train_p, test_p] = train_test_split(series.prices, ratio);
    PriceSeries train, test;
    train.prices = std::move(train_p);
    test.prices = std::move(test_p);
    train.dates.assign(series.dates.begin(), series.dates.begin() + train.prices.size());
    test.dates.assign(series.dates.begin() + train.prices.size(), series.dates.end());
    return {std::move(train), std::move(test)};
}

ScalingState minmax_fit(const std::vector<double>& train_prices) {
    if (train_prices.empty()) throw DataError("minmax_fit: empty input");
    const auto [lo, hi] = std::minmax_element(train_prices.begin(), train_prices.end());
    if (*hi <= *lo) throw DataError("minmax_fit: constant data, max == min");
    return {*lo, *hi};
}

std::vector<double> minmax_apply(const std::vector<double>& prices, const ScalingState& s) {
    std::vector<double> out(prices.size());
    const double span = s.max - s.min;
    for (std::size_t i = 0; i < prices.size(); ++i) out[i] = (prices[i] - s.min) / span;
    return out;
}

std::vector<double> minmax_invert(const std::vector<double>& scaled, const ScalingState& s) {
    std::vector<double> out(scaled.size());
    const double span = s.max - s.min;
    for (std::size_t i = 0; i < scaled.size(); ++i) out[i] = scaled[i] * span + s.min;
    return out;
}

std::pair<std::vector<double>, double> l2_normalize(const std::vector<double>& window) {
    double norm_sq = 0.0;
    for (double v : window) norm_sq += v * v;
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) throw DataError("l2_normalize: zero vector");
    std::vector<double> unit(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) unit[i] = window[i] / norm;
    return {std::move(unit), norm};
}

WindowedDataset make_windows(const std::vector<double>& scaled, const WindowSpec& spec,
                             const ScalingState& scaling) {
    if (spec.b < 1 || spec.f < 1 || spec.stride < 1) {
        throw DataError("make_windows: b, f and stride must be positive");
    }
    const int n = static_cast<int>(scaled.size());
    if (n < spec.b + spec.f) throw DataError("make_windows: series shorter than b + f");
    WindowedDataset ds;
    ds.spec = spec;
    ds.spec.overlapped = false;
    ds.scaling = scaling;
    for (int t = 0; t + spec.b + spec.f <= n; t += spec.stride) {
        WindowPair pair;
        pair.past.assign(scaled.begin() + t, scaled.begin() + t + spec.b);
        pair.target.assign(scaled.begin() + t + spec.b, scaled.begin() + t + spec.b + spec.f);
        ds.pairs.push_back(std::move(pair));
    }
    return ds;
}

WindowedDataset make_overlapped_windows(const std::vector<double>& scaled, int b, int f,
                                        const ScalingState& scaling) {
    if (b < 1 || f < 1) throw DataError("make_overlapped_windows: b and f must be positive");
    if (f > b) throw DataError("make_overlapped_windows: requires f <= b");
    const int n = static_cast<int>(scaled.size());
    if (n < b + f) throw DataError("make_overlapped_windows: series shorter than b + f");
    WindowedDataset ds;
    ds.spec = WindowSpec{b, f, 1, true};
    ds.scaling = scaling;
    for (int t = 0; t + b + f <= n; ++t) {
        WindowPair pair;
        pair.past.assign(scaled.begin() + t, scaled.begin() + t + b);
        // Target spans [t+b-f, t+b+f): first f entries duplicate the tail of past.
        pair.target.assign(scaled.begin() + t + b - f, scaled.begin() + t + b + f);
        ds.pairs.push_back(std::move(pair));
    }
    return ds;
}

WindowedDataset l2_normalize_dataset(const WindowedDataset& ds) {
    if (ds.normalized) return ds;
    WindowedDataset out = ds;
    out.normalized = true;
    for (WindowPair& pair : out.pairs) {
        auto [past_unit, past_norm] = l2_normalize(pair.past);
        auto [target_unit, target_norm] = l2_normalize(pair.target);
        pair.past = std::move(past_unit);
        pair.target = std::move(target_unit);
        pair.past_norm = past_norm;
        pair.target_norm = target_norm;
    }
    return out;
}

NormalizationRecovery recover_normalization(const std::vector<double>& a,
                                            const std::vector<double>& y_hat) {
    if (a.size() != y_hat.size() || a.empty()) {
        throw DataError("recover_normalization: inputs must have equal nonzero length");
    }
    double dot = 0.0, y_sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * y_hat[i];
        y_sq += y_hat[i] * y_hat[i];
    }
    if (y_sq == 0.0) throw DataError("recover_normalization: all-zero predictions");
    NormalizationRecovery rec;
    rec.a = a;
    rec.y_hat = y_hat;
    rec.factor = dot / y_sq;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = a[i] - rec.factor * y_hat[i];
        rec.residual += r * r;
    }
    return rec;
}

std::vector<double> inverse_pipeline(const std::vector<double>& normalized, double factor,
                                     const ScalingState& scaling, double lambda) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw DataError("inverse_pipeline: factor must be positive and finite");
    }
    std::vector<double> scaled(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) scaled[i] = factor * normalized[i];
    std::vector<double> prices = minmax_invert(scaled, scaling);
    if (prices.size() >= 3 && lambda > 0.0) return hp_filter(prices, lambda);
    return prices;
}

}  // namespace qganf
