#include "hzlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "hzlab/errors.hpp"

namespace hzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': not a finite number: '" + value +
                          "'");
    }
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
    }
    return v;
}

}  // namespace

bool ExperimentConfig::has(const std::string& key) const {
    return params.count(key) != 0;
}

double ExperimentConfig::num(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError("missing required key '" + key + "' for kind '" +
                          kind + "'");
    }
    return parse_double(key, it->second);
}

double ExperimentConfig::num_or(const std::string& key, double dflt) const {
    return has(key) ? num(key) : dflt;
}

std::int64_t ExperimentConfig::integer(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError("missing required key '" + key + "' for kind '" +
                          kind + "'");
    }
    return parse_int(key, it->second);
}

std::int64_t ExperimentConfig::integer_or(const std::string& key,
                                          std::int64_t dflt) const {
    return has(key) ? integer(key) : dflt;
}

std::string ExperimentConfig::str(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError("missing required key '" + key + "' for kind '" +
                          kind + "'");
    }
    return it->second;
}

std::string ExperimentConfig::str_or(const std::string& key,
                                     const std::string& dflt) const {
    return has(key) ? str(key) : dflt;
}

std::vector<double> ExperimentConfig::num_list(
    const std::string& key, const std::string& single_key) const {
    std::vector<double> out;
    if (has(key)) {
        std::stringstream ss(params.at(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) {
                throw ConfigError("key '" + key + "': empty list element");
            }
            out.push_back(parse_double(key, item));
        }
        if (out.empty()) {
            throw ConfigError("key '" + key + "': empty list");
        }
        return out;
    }
    out.push_back(num(single_key));
    return out;
}

ExperimentConfig load_config(const std::string& path, const std::string& kind) {
    if (std::find(kExperimentKinds.begin(), kExperimentKinds.end(), kind) ==
        kExperimentKinds.end()) {
        throw ConfigError("unknown experiment kind '" + kind + "'");
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    ExperimentConfig cfg;
    cfg.kind = kind;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key");
        }
        if (cfg.params.count(key)) {
            throw ConfigError("key '" + key + "': duplicated in config");
        }
        cfg.params[key] = value;
    }

    if (cfg.has("kind")) {
        if (cfg.params["kind"] != kind) {
            throw ConfigError("key 'kind': config says '" +
                              cfg.params["kind"] + "' but command line says '" +
                              kind + "'");
        }
        cfg.params.erase("kind");
    }
    if (cfg.has("seed")) {
        const std::int64_t s = cfg.integer("seed");
        if (s < 0) throw ConfigError("key 'seed': must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
        cfg.params.erase("seed");
    }
    if (cfg.has("threads")) {
        const std::int64_t th = cfg.integer("threads");
        if (th < 1) throw ConfigError("key 'threads': must be >= 1");
        cfg.threads = static_cast<unsigned>(th);
        cfg.params.erase("threads");
    }
    if (cfg.has("cache_dir")) {
        cfg.cache_dir = cfg.params.at("cache_dir");
        cfg.params.erase("cache_dir");
    }
    return cfg;
}

namespace {

using Check = void (*)(const ExperimentConfig&);

void require_shift(const ExperimentConfig& cfg, const std::string& key) {
    const double y = cfg.num(key);
    if (!(y >= 0.0 && y < 1.0)) {
        throw ConfigError("key '" + key + "': must lie in [0,1)");
    }
}

void check_step_key(const ExperimentConfig& cfg) {
    const double step = cfg.num_or("step", 0.05);
    if (!(step > 0.0 && step <= 0.2)) {
        throw ConfigError("key 'step': must lie in (0, 0.2]");
    }
}

void check_refine_key(const ExperimentConfig& cfg) {
    const std::int64_t r = cfg.integer_or("refine", 1);
    if (r != 0 && r != 1) {
        throw ConfigError("key 'refine': must be 0 or 1");
    }
}

void check_eval(const ExperimentConfig& cfg) {
    if (!std::isfinite(cfg.num("sigma"))) {
        throw ConfigError("key 'sigma': must be finite");
    }
    static_cast<void>(cfg.num("t"));
    require_shift(cfg, "y");
    const double target = cfg.num_or("target", 1e-10);
    if (!(target > 0.0)) {
        throw ConfigError("key 'target': must be positive");
    }
}

void check_afe_scan(const ExperimentConfig& cfg) {
    const double t_min = cfg.num("t_min");
    const double t_max = cfg.num("t_max");
    if (!(t_min >= kTwoPi)) {
        throw ConfigError("key 't_min': must be >= 2*pi");
    }
    if (!(t_max > t_min)) {
        throw ConfigError("key 't_max': must exceed t_min");
    }
    if (cfg.integer("steps") < 2) {
        throw ConfigError("key 'steps': must be >= 2");
    }
    require_shift(cfg, "y");
    const std::string policy = cfg.str_or("M_policy", "balanced");
    if (policy != "balanced" && policy != "fixed") {
        throw ConfigError("key 'M_policy': must be 'balanced' or 'fixed'");
    }
    if (policy == "fixed") {
        const double m = cfg.num("M");
        if (!(m >= 1.0 && m <= t_min)) {
            throw ConfigError("key 'M': must lie in [1, t_min]");
        }
    }
}

void check_kernel(const ExperimentConfig& cfg) {
    const std::int64_t j_min = cfg.integer_or("j_min", 1);
    const std::int64_t j_max = cfg.integer_or("j_max", 7);
    if (j_min < 0) throw ConfigError("key 'j_min': must be >= 0");
    if (j_max < j_min) throw ConfigError("key 'j_max': must be >= j_min");
    if (j_max > 20) throw ConfigError("key 'j_max': must be <= 20");
    if (cfg.integer_or("nodes", 20000) < 1000) {
        throw ConfigError("key 'nodes': must be >= 1000");
    }
}

void check_moment(const ExperimentConfig& cfg) {
    const std::int64_t power = cfg.integer("power");
    if (power != 2 && power != 4) {
        throw ConfigError("key 'power': must be 2 or 4");
    }
    require_shift(cfg, "y");
    for (const double v : cfg.num_list("V_list", "V")) {
        if (!(v > kTwoPi)) {
            throw ConfigError("key 'V': every value must exceed 2*pi");
        }
    }
    check_step_key(cfg);
    check_refine_key(cfg);
}

void check_twisted(const ExperimentConfig& cfg) {
    require_shift(cfg, "y");
    if (!(cfg.num("V") > kTwoPi)) {
        throw ConfigError("key 'V': must exceed 2*pi");
    }
    for (const double u : cfg.num_list("u_list", "u")) {
        if (!(u >= 0.0 && u < 1.0)) {
            throw ConfigError("key 'u': every value must lie in [0,1)");
        }
    }
    check_step_key(cfg);
    check_refine_key(cfg);
}

void check_product(const ExperimentConfig& cfg) {
    for (const double t : cfg.num_list("T_list", "T")) {
        if (!(t >= 1.0)) {
            throw ConfigError("key 'T': every value must be >= 1");
        }
    }
    for (const double k : cfg.num_list("K_list", "K")) {
        if (!(k >= 1.0 && k == std::floor(k))) {
            throw ConfigError("key 'K': every value must be a positive integer");
        }
    }
    for (const double l : cfg.num_list("L_list", "L")) {
        if (!(l >= 1.0 && l == std::floor(l))) {
            throw ConfigError("key 'L': every value must be a positive integer");
        }
    }
    for (const double th : cfg.num_list("theta_list", "theta")) {
        if (!(th >= 0.0 && th < 1.0)) {
            throw ConfigError("key 'theta': every value must lie in [0,1)");
        }
    }
    for (const double xi : cfg.num_list("xi_list", "xi")) {
        if (!(xi >= 0.0 && xi < 1.0)) {
            throw ConfigError("key 'xi': every value must lie in [0,1)");
        }
    }
    if (cfg.num("alpha") == 0.0) {
        throw ConfigError("key 'alpha': must be nonzero");
    }
    if (cfg.num("beta") == 0.0) {
        throw ConfigError("key 'beta': must be nonzero");
    }
    const std::string coeffs = cfg.str_or("coeffs", "random_unimodular");
    if (coeffs != "all_ones" && coeffs != "random_unimodular") {
        throw ConfigError(
            "key 'coeffs': must be 'all_ones' or 'random_unimodular'");
    }
    if (cfg.has("step")) check_step_key(cfg);
    check_refine_key(cfg);
}

void check_t2_scan(const ExperimentConfig& cfg) {
    const double v = cfg.num("V");
    const double t = cfg.num("T");
    if (!(v >= 1.0)) throw ConfigError("key 'V': must be >= 1");
    if (!(t >= v)) throw ConfigError("key 'T': must be >= V");
    if (!(t > std::numbers::e)) throw ConfigError("key 'T': must exceed e");
    const std::int64_t k = cfg.integer("K");
    if (k < 1) throw ConfigError("key 'K': must be >= 1");
    require_shift(cfg, "theta");
    if (cfg.num("alpha") == 0.0) {
        throw ConfigError("key 'alpha': must be nonzero");
    }
    if (cfg.integer("steps") < 1) {
        throw ConfigError("key 'steps': must be >= 1");
    }
    const double ss = cfg.num_or("sigma_step", 0.1);
    if (!(ss > 0.0 && ss <= 0.1)) {
        throw ConfigError("key 'sigma_step': must lie in (0, 0.1]");
    }
}

void check_fit(const ExperimentConfig& cfg) {
    if (cfg.str("input").empty()) {
        throw ConfigError("key 'input': must name a moment CSV file");
    }
}

const std::map<std::string, std::set<std::string>> kAllowedKeys = {
    {"eval", {"sigma", "t", "y", "target"}},
    {"afe-scan", {"t_min", "t_max", "steps", "y", "M_policy", "M"}},
    {"kernel", {"j_min", "j_max", "nodes"}},
    {"moment", {"power", "y", "V", "V_list", "step", "refine"}},
    {"twisted-moment", {"y", "V", "u", "u_list", "step", "refine"}},
    {"product-moment",
     {"T", "T_list", "K", "K_list", "L", "L_list", "theta", "theta_list",
      "xi", "xi_list", "alpha", "beta", "coeffs", "step", "refine"}},
    {"t2-scan", {"V", "T", "K", "theta", "alpha", "steps", "sigma_step"}},
    {"fit", {"input"}},
};

const std::map<std::string, Check> kChecks = {
    {"eval", check_eval},
    {"afe-scan", check_afe_scan},
    {"kernel", check_kernel},
    {"moment", check_moment},
    {"twisted-moment", check_twisted},
    {"product-moment", check_product},
    {"t2-scan", check_t2_scan},
    {"fit", check_fit},
};

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
    const auto allowed = kAllowedKeys.find(cfg.kind);
    if (allowed == kAllowedKeys.end()) {
        throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
    }
    for (const auto& [key, value] : cfg.params) {
        if (!allowed->second.count(key)) {
            throw ConfigError("key '" + key + "': not recognized for kind '" +
                              cfg.kind + "'");
        }
    }
    if (cfg.threads < 1) {
        throw ConfigError("key 'threads': must be >= 1");
    }
    kChecks.at(cfg.kind)(cfg);
}

}  // namespace hzlab
