// End-to-end checks of the hzlab binary: argv[1] is the executable path.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli_env(const std::string& env_prefix, const std::string& args,
                      const fs::path& scratch) {
    const fs::path out_file = scratch / "run_output.txt";
    const std::string cmd = env_prefix + "\"" + g_binary + "\" " + args +
                            " > \"" + out_file.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

RunResult run_cli(const std::string& args, const fs::path& scratch) {
    return run_cli_env("", args, scratch);
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("hzlab_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("eval kind prints the Basel value") {
    const auto dir = fresh_dir("basel");
    write_file(dir / "cfg.txt", "sigma = 2\nt = 0\ny = 0\n");
    const auto r = run_cli("eval --config \"" + (dir / "cfg.txt").string() +
                               "\" --out \"" + dir.string() + "\"",
                           dir);
    CHECK(r.exit_code == 0);
    const auto pos = r.output.find("value=");
    REQUIRE(pos != std::string::npos);
    const double value = std::strtod(r.output.c_str() + pos + 6, nullptr);
    const double basel = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(std::abs(value - basel) <= 1e-10);
    CHECK(fs::exists(dir / "eval.csv"));
}

TEST_CASE("config errors exit with status 2 and name the key") {
    const auto dir = fresh_dir("cfgerr");
    write_file(dir / "cfg.txt", "sigma = 2\nt = 0\n");  // y missing
    const auto r = run_cli("eval --config \"" + (dir / "cfg.txt").string() +
                               "\" --out \"" + dir.string() + "\"",
                           dir);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("'y'") != std::string::npos);

    const auto missing = run_cli("eval --config /no/such/file.txt", dir);
    CHECK(missing.exit_code == 2);
}

TEST_CASE("computation errors exit with status 1") {
    const auto dir = fresh_dir("comperr");
    write_file(dir / "cfg.txt", "sigma = 1\nt = 0\ny = 0\n");  // the pole
    const auto r = run_cli("eval --config \"" + (dir / "cfg.txt").string() +
                               "\" --out \"" + dir.string() + "\"",
                           dir);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("moment runs are byte-identical across reruns and thread counts") {
    const auto dir = fresh_dir("deterministic");
    write_file(dir / "cfg.txt",
               "power = 2\ny = 0.3\nV = 40\nstep = 0.05\nrefine = 1\n");
    const std::string cfg = (dir / "cfg.txt").string();
    for (const std::string run : {"a", "b", "c"}) {
        fs::create_directories(dir / run);
        const std::string threads = run == "c" ? "7" : "1";
        const auto r = run_cli("moment --config \"" + cfg + "\" --threads " +
                                   threads + " --out \"" +
                                   (dir / run).string() + "\"",
                               dir);
        REQUIRE(r.exit_code == 0);
    }
    const auto a = slurp(dir / "a" / "moment.csv");
    CHECK(a == slurp(dir / "b" / "moment.csv"));
    CHECK(a == slurp(dir / "c" / "moment.csv"));
    CHECK(slurp(dir / "a" / "moment_value.dat") ==
          slurp(dir / "c" / "moment_value.dat"));
    CHECK(a.find("kind,V_or_T,y_or_params,power,step,value,quad_error_est,"
                 "evals,elapsed_seconds") == 0);
}

TEST_CASE("moment sweep feeds the fit kind, which appends") {
    const auto dir = fresh_dir("pipeline");
    write_file(dir / "moment.cfg",
               "power = 4\ny = 0\nV_list = 100,200,400,800\nstep = 0.1\n"
               "refine = 0\n");
    const auto sweep = run_cli("moment --config \"" +
                                   (dir / "moment.cfg").string() +
                                   "\" --out \"" + dir.string() + "\"",
                               dir);
    REQUIRE(sweep.exit_code == 0);

    write_file(dir / "fit.cfg",
               "input = " + (dir / "moment.csv").string() + "\n");
    const auto fit1 = run_cli("fit --config \"" + (dir / "fit.cfg").string() +
                                  "\" --out \"" + dir.string() + "\"",
                              dir);
    REQUIRE(fit1.exit_code == 0);
    const auto first = slurp(dir / "fit.csv");
    CHECK(first.find("logC,p,q,rms_residual,n_points") == 0);

    const auto fit2 = run_cli("fit --config \"" + (dir / "fit.cfg").string() +
                                  "\" --out \"" + dir.string() + "\"",
                              dir);
    REQUIRE(fit2.exit_code == 0);
    const auto second = slurp(dir / "fit.csv");
    CHECK(second.size() > first.size());
    CHECK(second.find(first) == 0);  // strictly appended
}

TEST_CASE("cache directory round-trip through the CLI") {
    const auto dir = fresh_dir("cache");
    write_file(dir / "cfg.txt", "sigma = 0.5\nt = 25.25\ny = 0.3\n");
    const std::string base = "eval --config \"" + (dir / "cfg.txt").string() +
                             "\" --out \"" + dir.string() +
                             "\" --cache-dir \"" + (dir / "cache").string() +
                             "\"";
    const auto cold = run_cli(base, dir);
    REQUIRE(cold.exit_code == 0);
    const auto csv_cold = slurp(dir / "eval.csv");
    CHECK(fs::exists(dir / "cache" / "zeta_line.cache"));

    const auto warm = run_cli(base, dir);
    REQUIRE(warm.exit_code == 0);
    CHECK(slurp(dir / "eval.csv") == csv_cold);

    // corrupt cache: the run still succeeds, uncached
    write_file(dir / "cache" / "zeta_line.cache", "garbage\n");
    const auto broken = run_cli(base, dir);
    CHECK(broken.exit_code == 0);
    CHECK(slurp(dir / "eval.csv") == csv_cold);
    CHECK(broken.output.find("uncached") != std::string::npos);
}

TEST_CASE("bad usage exits with status 2") {
    const auto dir = fresh_dir("usage");
    CHECK(run_cli("bogus-kind --config x.txt", dir).exit_code == 2);
    CHECK(run_cli("moment", dir).exit_code == 2);
    write_file(dir / "cfg.txt", "sigma = 2\nt = 0\ny = 0\n");
    CHECK(run_cli("eval --config \"" + (dir / "cfg.txt").string() +
                      "\" --threads 0",
                  dir)
              .exit_code == 2);
    CHECK(run_cli("eval --config \"" + (dir / "cfg.txt").string() +
                      "\" --seed -3",
                  dir)
              .exit_code == 2);
}

TEST_CASE("product-moment with all-ones coefficients") {
    const auto dir = fresh_dir("allones");
    write_file(dir / "cfg.txt",
               "T = 10\nK = 2\nL = 2\ntheta = 0\nxi = 0\nalpha = 1\n"
               "beta = 1\ncoeffs = all_ones\nstep = 0.05\n");
    const auto r = run_cli("product-moment --config \"" +
                               (dir / "cfg.txt").string() + "\" --out \"" +
                               dir.string() + "\"",
                           dir);
    REQUIRE(r.exit_code == 0);
    const auto csv = slurp(dir / "product-moment.csv");
    CHECK(csv.find("product-moment,10,K=2;L=2") != std::string::npos);
}

TEST_CASE("cache directory precedence: flag beats env beats config") {
    const auto dir = fresh_dir("precedence");
    write_file(dir / "cfg.txt",
               "sigma = 0.5\nt = 31.5\ny = 0.2\n"
               "cache_dir = " + (dir / "from_config").string() + "\n");
    const std::string base = "eval --config \"" + (dir / "cfg.txt").string() +
                             "\" --out \"" + dir.string() + "\"";

    // config only
    REQUIRE(run_cli(base, dir).exit_code == 0);
    CHECK(fs::exists(dir / "from_config" / "zeta_line.cache"));

    // env overrides config
    const std::string env_prefix =
        "HZLAB_CACHE_DIR=\"" + (dir / "from_env").string() + "\" ";
    REQUIRE(run_cli_env(env_prefix, base, dir).exit_code == 0);
    CHECK(fs::exists(dir / "from_env" / "zeta_line.cache"));

    // flag overrides env
    REQUIRE(run_cli_env(env_prefix,
                        base + " --cache-dir \"" +
                            (dir / "from_flag").string() + "\"",
                        dir)
                .exit_code == 0);
    CHECK(fs::exists(dir / "from_flag" / "zeta_line.cache"));
}

int main(int argc, char** argv) {
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_binary = argv[argc - 1];
        --argc;
    }
    if (g_binary.empty()) {
        std::fprintf(stderr, "usage: test_cli [doctest args] <hzlab binary>\n");
        return 1;
    }
    doctest::Context ctx(argc, argv);
    return ctx.run();
}
