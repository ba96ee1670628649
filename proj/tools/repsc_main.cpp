#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "repsc/commands.hpp"
#include "repsc/errors.hpp"

namespace {

int default_jobs() {
    if (const char* env = std::getenv("REPSC_JOBS")) {
        try {
            int j = std::stoi(env);
            if (j >= 1) return j;
        } catch (const std::exception&) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"repsc - repulsive-Hamiltonian scattering and reconstruction toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int jobs = default_jobs();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--jobs", jobs, "parallel jobs (REPSC_JOBS fallback)");
    };

    CLI::App* mehler = app.add_subcommand("mehler-check", "free-propagator consistency reports");
    CLI::App* evolve = app.add_subcommand("evolve", "interacting evolution with trajectory log");
    CLI::App* scatter = app.add_subcommand("scatter", "scattering operator runs");
    CLI::App* sweep = app.add_subcommand("sweep", "high-velocity commutator sweep");
    CLI::App* recon = app.add_subcommand("reconstruct", "X-ray sampling and back-projection");
    for (CLI::App* sub : {mehler, evolve, scatter, sweep, recon}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        repsc::RunConfig cfg = repsc::load_config(config_path);
        if (mehler->parsed()) return repsc::cmd_mehler_check(cfg, out_dir);
        if (evolve->parsed()) return repsc::cmd_evolve(cfg, out_dir);
        if (scatter->parsed()) return repsc::cmd_scatter(cfg, out_dir, jobs);
        if (sweep->parsed()) return repsc::cmd_sweep(cfg, out_dir, jobs);
        if (recon->parsed()) return repsc::cmd_reconstruct(cfg, out_dir, jobs);
    } catch (const repsc::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const repsc::ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what()
                  << " (tail estimate " << e.tail_estimate() << ")\n";
        return 4;
    } catch (const repsc::AliasingError& e) {
        std::cerr << "aliasing: " << e.what() << "\n";
        return 3;
    } catch (const repsc::GridOverflowError& e) {
        std::cerr << "grid overflow: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
