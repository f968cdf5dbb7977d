#include "qganf/cli.hpp"

#include <cmath>

#include "qganf/ansatz.hpp"
#include "qganf/statevector.hpp"
#include <fstream>
#include <sstream>

namespace qganf {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const int v = std::stoi(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected integer, got \"" + value + "\"");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected number, got \"" + value + "\"");
    }
}

std::vector<std::pair<int, int>> parse_windows(const std::string& value) {
    std::vector<std::pair<int, int>> windows;
    for (const std::string& item : split(value, ',')) {
        const auto bf = split(item, ':');
        if (bf.size() != 2) {
            throw ConfigError("windows: expected b:f pairs separated by commas, got \"" +
                              value + "\"");
        }
        windows.emplace_back(parse_int("windows", bf[0]), parse_int("windows", bf[1]));
    }
    return windows;
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    if (key == "input_csv") c.input_csv = value;
    else if (key == "out_dir") c.out_dir = value;
    else if (key == "hp_lambda") c.hp_lambda = parse_double(key, value);
    else if (key == "split_ratio") c.split_ratio = parse_double(key, value);
    else if (key == "b") c.b = parse_int(key, value);
    else if (key == "f") c.f = parse_int(key, value);
    else if (key == "stride") c.stride = parse_int(key, value);
    else if (key == "model") c.model = value;
    else if (key == "epochs") c.epochs = parse_int(key, value);
    else if (key == "batch_size") c.batch_size = parse_int(key, value);
    else if (key == "gen_lr") c.gen_lr = parse_double(key, value);
    else if (key == "disc_lr") c.disc_lr = parse_double(key, value);
    else if (key == "noise_dim") c.noise_dim = parse_int(key, value);
    else if (key == "ansatz_layers") c.ansatz_layers = parse_int(key, value);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "ema_span") c.ema_span = parse_int(key, value);
    else if (key == "momentum_lag") c.momentum_lag = parse_int(key, value);
    else if (key == "windows") c.windows = parse_windows(value);
    else if (key == "kinds") c.kinds = split(value, ',');
    else throw ConfigError("unknown config key: " + key);
}

}  // namespace

std::string config_key_help() {
    return "input_csv, out_dir, hp_lambda, split_ratio, b, f, stride, model, epochs, "
           "batch_size, gen_lr, disc_lr, noise_dim, ansatz_layers, seed, ema_span, "
           "momentum_lag, windows (b:f,b:f,...), kinds (comma-separated)";
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file " + path);
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + " line " + std::to_string(line_no) +
                              ": expected key=value");
        }
        set_key(config, line.substr(0, eq), line.substr(eq + 1));
    }
    return config;
}

void apply_override(ExperimentConfig& config, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override must be key=value, got \"" + key_value + "\"");
    }
    set_key(config, key_value.substr(0, eq), key_value.substr(eq + 1));
}

ModelKind ExperimentConfig::model_kind() const {
    try {
        return model_kind_from_string(model);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

int ExperimentConfig::resolved_noise_dim() const {
    if (noise_dim >= 0) return noise_dim;
    switch (model_kind()) {
        case ModelKind::SimpleGan:
        case ModelKind::GanTi:
            return 8;
        default:
            return 0;
    }
}

TrainConfig ExperimentConfig::to_train_config() const {
    TrainConfig t;
    t.kind = model_kind();
    t.epochs = epochs;
    t.batch_size = batch_size;
    t.gen_adam.lr = gen_lr;
    t.disc_adam.lr = disc_lr;
    t.window.b = b;
    t.window.f = f;
    t.window.stride = stride;
    t.window.overlapped = (t.kind == ModelKind::InvertibleFqgan);
    t.ansatz_layers = ansatz_layers;
    t.noise_dim = resolved_noise_dim();
    t.seed = seed;
    t.hp_lambda = hp_lambda;
    return t;
}

void ExperimentConfig::validate() const {
    if (!(hp_lambda >= 0.0) || !std::isfinite(hp_lambda)) {
        throw ConfigError("hp_lambda must be finite and >= 0");
    }
    if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
        throw ConfigError("split_ratio must be in (0, 1)");
    }
    if (b < 1 || f < 1 || stride < 1) throw ConfigError("b, f and stride must be >= 1");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (!(gen_lr > 0.0) || !(disc_lr > 0.0)) throw ConfigError("learning rates must be > 0");
    if (ansatz_layers < 1) throw ConfigError("ansatz_layers must be >= 1");
    if (ema_span < 1 || momentum_lag < 1) {
        throw ConfigError("ema_span and momentum_lag must be >= 1");
    }
    const ModelKind kind = model_kind();
    if (kind == ModelKind::HybridQgan && f != 1) {
        throw ConfigError("hybrid_qgan requires f = 1");
    }
    if (kind == ModelKind::InvertibleFqgan && f > b) {
        throw ConfigError("invertible_fqgan requires f <= b");
    }
    if (kind == ModelKind::HybridQgan && b > kMaxQubits) {
        throw ConfigError("hybrid_qgan: past window exceeds the qubit cap");
    }
    if (kind == ModelKind::Fqgan || kind == ModelKind::InvertibleFqgan) {
        const int target_len = (kind == ModelKind::InvertibleFqgan) ? 2 * f : f;
        if (b >= 2 && target_len >= 2 &&
            ceil_log2(b) + ceil_log2(target_len) + 1 > kMaxQubits) {
            throw ConfigError("fqgan: qubit cap exceeded");
        }
    }
    for (const std::string& k : kinds) {
        try {
            model_kind_from_string(k);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
    for (const auto& [wb, wf] : windows) {
        if (wb < 1 || wf < 1) throw ConfigError("windows entries must be positive");
    }
}

}  // namespace qganf
