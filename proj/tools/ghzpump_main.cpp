#include <CLI11.hpp>

#include <cstdlib>
#include <string>

#include "ghzpump/runner.hpp"
#include "ghzpump/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Dissipative GHZ-state preparation: simulation, rate models, and parameter "
                 "optimization"};
    app.set_version_flag("--version", ghzpump::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Run configuration file (key = value lines)");
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--seed", seed, "RNG seed for jittered optimizer restarts");
        sub->add_option("--threads", threads, "Worker threads for sweeps (0 = 1)");
    };

    for (const char* name : {"simulate", "sweep", "optimize", "ratemodel", "params"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    if (threads == 0) {
        if (const char* env = std::getenv("GHZPUMP_THREADS")) threads = std::atoi(env);
    }
    if (threads <= 0) threads = 1;

    ghzpump::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = ghzpump::RunConfig::from_file(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    ghzpump::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = seed;
    opts.threads = threads;
    return ghzpump::run_command(app.get_subcommands().front()->get_name(), cfg, opts);
}
