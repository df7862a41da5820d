// hzlab — numerical laboratory for Hurwitz zeta moments and shifted
// Dirichlet polynomial mean values.
//
//   hzlab <kind> --config <file> [--threads N] [--seed S] [--out DIR]
//                [--cache-dir DIR]
//
// kinds: eval | afe-scan | kernel | moment | twisted-moment |
//        product-moment | t2-scan | fit
//
// Exit status: 0 on success, 2 on configuration errors, 1 otherwise.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "hzlab/config.hpp"
#include "hzlab/errors.hpp"
#include "hzlab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Hurwitz zeta / Dirichlet polynomial moment laboratory"};
    app.name("hzlab");

    std::string kind;
    std::string config_path;
    std::string out_dir;
    std::string cache_dir;
    unsigned threads = 0;
    long long seed = -1;

    app.add_option("kind", kind, "experiment kind")
        ->required()
        ->check(CLI::IsMember(hzlab::kExperimentKinds));
    app.add_option("--config", config_path, "flat key=value config file")
        ->required();
    app.add_option("--threads", threads, "worker threads (overrides config)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed (overrides config)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_dir, "output directory (default .)");
    app.add_option("--cache-dir", cache_dir,
                   "evaluation cache directory (overrides HZLAB_CACHE_DIR "
                   "and config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        hzlab::ExperimentConfig cfg = hzlab::load_config(config_path, kind);
        // flag beats env beats config
        if (const char* env = std::getenv("HZLAB_CACHE_DIR")) {
            cfg.cache_dir = env;
        }
        if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
        if (threads != 0) cfg.threads = threads;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        hzlab::run_experiment(cfg);
        return 0;
    } catch (const hzlab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
