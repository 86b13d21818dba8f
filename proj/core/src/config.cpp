#include "fdlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>

#include "fdlab/errors.hpp"
#include "fdlab/io.hpp"

namespace fdlab {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

struct KeySpec {
    const char* key;
    const char* type; // "real" | "integer" | "seed" | "real list"
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects a real number, got '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

std::uint64_t parse_seed(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        std::uint64_t x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects an unsigned integer, got '" + v +
                          "'");
    }
}

std::vector<double> parse_real_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_real(key, item));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' expects a real list");
    return out;
}

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"params.s", "real", [](ExperimentConfig& c, const std::string& v) { c.s = parse_real("params.s", v); }},
        {"params.alpha", "real", [](ExperimentConfig& c, const std::string& v) { c.alpha = parse_real("params.alpha", v); }},
        {"params.n", "integer", [](ExperimentConfig& c, const std::string& v) { c.dim = static_cast<int>(parse_int("params.n", v)); }},
        {"grid.N", "integer", [](ExperimentConfig& c, const std::string& v) { c.grid_n = static_cast<int>(parse_int("grid.N", v)); }},
        {"grid.L", "real", [](ExperimentConfig& c, const std::string& v) { c.grid_length = parse_real("grid.L", v); }},
        {"grid.M", "integer", [](ExperimentConfig& c, const std::string& v) { c.strip_m = static_cast<int>(parse_int("grid.M", v)); }},
        {"grid.Y", "real", [](ExperimentConfig& c, const std::string& v) { c.strip_height = parse_real("grid.Y", v); }},
        {"grid.gamma", "real", [](ExperimentConfig& c, const std::string& v) { c.strip_gamma = parse_real("grid.gamma", v); }},
        {"drift.beta", "real", [](ExperimentConfig& c, const std::string& v) { c.drift_beta = parse_real("drift.beta", v); }},
        {"drift.lambda", "integer", [](ExperimentConfig& c, const std::string& v) { c.drift_lambda = static_cast<int>(parse_int("drift.lambda", v)); }},
        {"drift.terms", "integer", [](ExperimentConfig& c, const std::string& v) { c.drift_terms = static_cast<int>(parse_int("drift.terms", v)); }},
        {"drift.amplitude", "real", [](ExperimentConfig& c, const std::string& v) { c.drift_amplitude = parse_real("drift.amplitude", v); }},
        {"drift.seed", "seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_seed("drift.seed", v); }},
        {"forcing.amplitude", "real", [](ExperimentConfig& c, const std::string& v) { c.forcing_amplitude = parse_real("forcing.amplitude", v); }},
        {"forcing.modes", "integer", [](ExperimentConfig& c, const std::string& v) { c.forcing_modes = static_cast<int>(parse_int("forcing.modes", v)); }},
        {"init.amplitude", "real", [](ExperimentConfig& c, const std::string& v) { c.init_amplitude = parse_real("init.amplitude", v); }},
        {"init.modes", "integer", [](ExperimentConfig& c, const std::string& v) { c.init_modes = static_cast<int>(parse_int("init.modes", v)); }},
        {"run.tfinal", "real", [](ExperimentConfig& c, const std::string& v) { c.tfinal = parse_real("run.tfinal", v); }},
        {"run.cfl", "real", [](ExperimentConfig& c, const std::string& v) { c.cfl = parse_real("run.cfl", v); }},
        {"run.dt_max", "real", [](ExperimentConfig& c, const std::string& v) { c.dt_max = parse_real("run.dt_max", v); }},
        {"run.save_dt", "real", [](ExperimentConfig& c, const std::string& v) { c.save_dt = parse_real("run.save_dt", v); }},
        {"run.eps", "real", [](ExperimentConfig& c, const std::string& v) { c.eps = parse_real("run.eps", v); }},
        {"flatness.ratio", "real", [](ExperimentConfig& c, const std::string& v) { c.flatness_ratio = parse_real("flatness.ratio", v); }},
        {"flatness.scales", "integer", [](ExperimentConfig& c, const std::string& v) { c.flatness_scales = static_cast<int>(parse_int("flatness.scales", v)); }},
        {"flatness.min_samples", "integer", [](ExperimentConfig& c, const std::string& v) { c.min_samples = static_cast<std::size_t>(parse_int("flatness.min_samples", v)); }},
        {"experiment.theorem", "integer", [](ExperimentConfig& c, const std::string& v) { c.theorem = static_cast<int>(parse_int("experiment.theorem", v)); }},
        {"experiment.deltas", "real list", [](ExperimentConfig& c, const std::string& v) { c.deltas = parse_real_list("experiment.deltas", v); }},
        {"acceptance.exponent_tol", "real", [](ExperimentConfig& c, const std::string& v) { c.exponent_tol = parse_real("acceptance.exponent_tol", v); }},
        {"acceptance.slope_slack", "real", [](ExperimentConfig& c, const std::string& v) { c.slope_slack = parse_real("acceptance.slope_slack", v); }},
        {"acceptance.theorem2_floor", "real", [](ExperimentConfig& c, const std::string& v) { c.theorem2_floor = parse_real("acceptance.theorem2_floor", v); }},
    };
    return table;
}

const KeySpec* find_key(const std::string& key) {
    for (const auto& k : key_table())
        if (key == k.key) return &k;
    return nullptr;
}

void apply(ExperimentConfig& cfg, const ConfigMap& values) {
    for (const auto& [key, value] : values) {
        const KeySpec* spec = find_key(key);
        if (!spec) {
            std::string best;
            std::size_t best_d = 1e9;
            for (const auto& k : key_table()) {
                std::size_t d = edit_distance(key, k.key);
                if (d < best_d) {
                    best_d = d;
                    best = k.key;
                }
            }
            throw ConfigError("config: unknown key '" + key + "' (nearest valid key: '" + best +
                              "')");
        }
        spec->set(cfg, value);
    }
}

void validate(const ExperimentConfig& c) {
    auto fail = [](const std::string& m) { throw ConfigError("config: " + m); };
    if (!(c.s > 0.0) || c.s > 0.5) fail("params.s must lie in (0, 0.5]");
    if (!(c.alpha > 0.0) || c.alpha >= 2.0 * c.s) fail("params.alpha must lie in (0, 2s)");
    if (c.dim != 1 && c.dim != 2) fail("params.n must be 1 or 2");
    if (c.grid_n < 8 || (c.grid_n & (c.grid_n - 1)) != 0) fail("grid.N must be a power of two >= 8");
    if (!(c.grid_length > 0.0)) fail("grid.L must be positive");
    if (c.strip_m < 4) fail("grid.M must be at least 4");
    if (!(c.strip_height > 0.0)) fail("grid.Y must be positive");
    if (c.strip_gamma != 0.0 && c.strip_gamma < 1.0) fail("grid.gamma must be >= 1 (or 0 for default)");
    if (c.drift_beta != 0.0 && (c.drift_beta <= 0.0 || c.drift_beta > 1.0))
        fail("drift.beta must lie in (0, 1] (or 0 for the theorem default)");
    if (c.drift_lambda < 2) fail("drift.lambda must be an integer > 1");
    if (c.drift_terms < 1) fail("drift.terms must be positive");
    if (!(c.tfinal > 0.0)) fail("run.tfinal must be positive");
    if (!(c.cfl > 0.0) || c.cfl > 1.0) fail("run.cfl must lie in (0, 1]");
    if (!(c.dt_max > 0.0)) fail("run.dt_max must be positive");
    if (c.save_dt < 0.0) fail("run.save_dt must be >= 0");
    if (c.eps < 0.0) fail("run.eps must be >= 0");
    if (!(c.flatness_ratio > 0.0) || c.flatness_ratio > 0.5) fail("flatness.ratio must lie in (0, 0.5]");
    if (c.flatness_scales < 3) fail("flatness.scales must be at least 3");
    if (c.theorem != 1 && c.theorem != 2) fail("experiment.theorem must be 1 or 2");
    for (double d : c.deltas)
        if (d < 0.0) fail("experiment.deltas must be non-negative");
}

} // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full))
            throw ConfigError("config line " + std::to_string(lineno) + ": repeated key '" + full +
                              "'");
        out[full] = value;
    }
    return out;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

ExperimentConfig resolve_config(const ConfigMap& file_values, const ConfigMap& overrides) {
    ExperimentConfig cfg; // defaults
    apply(cfg, file_values);
    apply(cfg, overrides); // flags win
    validate(cfg);
    return cfg;
}

std::map<std::string, std::string> config_echo(const ExperimentConfig& c) {
    std::map<std::string, std::string> m;
    m["params.s"] = format_double(c.s);
    m["params.alpha"] = format_double(c.alpha);
    m["params.n"] = std::to_string(c.dim);
    m["grid.N"] = std::to_string(c.grid_n);
    m["grid.L"] = format_double(c.grid_length);
    m["grid.M"] = std::to_string(c.strip_m);
    m["grid.Y"] = format_double(c.strip_height);
    m["grid.gamma"] = format_double(c.strip_gamma);
    m["drift.beta"] = format_double(c.drift_beta);
    m["drift.lambda"] = std::to_string(c.drift_lambda);
    m["drift.terms"] = std::to_string(c.drift_terms);
    m["drift.amplitude"] = format_double(c.drift_amplitude);
    m["drift.seed"] = std::to_string(c.seed);
    m["forcing.amplitude"] = format_double(c.forcing_amplitude);
    m["forcing.modes"] = std::to_string(c.forcing_modes);
    m["init.amplitude"] = format_double(c.init_amplitude);
    m["init.modes"] = std::to_string(c.init_modes);
    m["run.tfinal"] = format_double(c.tfinal);
    m["run.cfl"] = format_double(c.cfl);
    m["run.dt_max"] = format_double(c.dt_max);
    m["run.save_dt"] = format_double(c.save_dt);
    m["run.eps"] = format_double(c.eps);
    m["flatness.ratio"] = format_double(c.flatness_ratio);
    m["flatness.scales"] = std::to_string(c.flatness_scales);
    m["flatness.min_samples"] = std::to_string(c.min_samples);
    m["experiment.theorem"] = std::to_string(c.theorem);
    {
        std::string s;
        for (std::size_t i = 0; i < c.deltas.size(); ++i)
            s += (i ? "," : "") + format_double(c.deltas[i]);
        m["experiment.deltas"] = s;
    }
    m["acceptance.exponent_tol"] = format_double(c.exponent_tol);
    m["acceptance.slope_slack"] = format_double(c.slope_slack);
    m["acceptance.theorem2_floor"] = format_double(c.theorem2_floor);
    return m;
}

std::vector<std::string> known_config_keys() {
    std::vector<std::string> keys;
    for (const auto& k : key_table()) keys.push_back(k.key);
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace fdlab
