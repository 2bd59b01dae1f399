#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "esbgk/cli.hpp"
#include "esbgk/config.hpp"
#include "esbgk/errors.hpp"

namespace {

esbgk::RunConfig assemble(const std::string& config_path, const std::string& out_dir, int threads,
                          long long seed, bool seed_set) {
    esbgk::RunConfig cfg;
    if (!config_path.empty()) cfg = esbgk::load_config_file(config_path);
    esbgk::apply_env_overrides(cfg);
    // flags outrank environment, environment outranks the file
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (seed_set) cfg.seed = static_cast<std::uint64_t>(seed);
    esbgk::finalize_config(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-Lagrangian ES-BGK relaxation solver, periodic slab"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 0;
    long long seed = 0;

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--config", config_path, "JSON config file");
        sc->add_option("--out", out_dir, "output directory (overrides config)");
        sc->add_option("--threads", threads, "worker threads (overrides config)")
            ->check(CLI::PositiveNumber);
        sc->add_option("--seed", seed, "seed recorded with the run (overrides config)")
            ->check(CLI::NonNegativeNumber);
    };
    CLI::App* run_cmd = app.add_subcommand("run", "advance the scheme, write diagnostics");
    CLI::App* conv_cmd = app.add_subcommand("converge", "self-convergence refinement ladder");
    CLI::App* check_cmd = app.add_subcommand("check", "structural invariant checks");
    add_common(run_cmd);
    add_common(conv_cmd);
    add_common(check_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        bool seed_set = run_cmd->count("--seed") || conv_cmd->count("--seed") ||
                        check_cmd->count("--seed");
        esbgk::RunConfig cfg = assemble(config_path, out_dir, threads, seed, seed_set);
        if (run_cmd->parsed()) return esbgk::cmd_run(cfg);
        if (conv_cmd->parsed()) return esbgk::cmd_converge(cfg);
        return esbgk::cmd_check(cfg);
    } catch (const esbgk::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const esbgk::Error& e) {
        if (e.step_index >= 0)
            std::fprintf(stderr, "error at step %d: %s\n", e.step_index, e.what());
        else
            std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
