#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hzlab {

// Flat experiment configuration: "key = value" lines, '#' comments.
// Global keys (kind, seed, threads, cache_dir) may appear in the file;
// command-line flags override them, and HZLAB_CACHE_DIR overrides the
// file's cache_dir (flag beats env beats config).
struct ExperimentConfig {
    std::string kind;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string cache_dir;
    std::string out_dir = ".";

    bool has(const std::string& key) const;

    // Typed accessors; every failure throws ConfigError naming the key.
    double num(const std::string& key) const;
    double num_or(const std::string& key, double dflt) const;
    std::int64_t integer(const std::string& key) const;
    std::int64_t integer_or(const std::string& key, std::int64_t dflt) const;
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& dflt) const;
    // "a,b,c" list of numbers; `key` first, falling back to `single_key`
    // as a one-element list.
    std::vector<double> num_list(const std::string& key,
                                 const std::string& single_key) const;
};

inline const std::vector<std::string> kExperimentKinds = {
    "eval",          "afe-scan",       "kernel",  "moment",
    "twisted-moment", "product-moment", "t2-scan", "fit"};

// Parses the file and folds in the global keys.  `kind` comes from the
// command line; a kind key in the file must agree with it.
ExperimentConfig load_config(const std::string& path, const std::string& kind);

// Range-checks every key for the configured kind; rejects unknown keys.
// Throws ConfigError before any computation happens.
void validate_config(const ExperimentConfig& cfg);

}  // namespace hzlab
