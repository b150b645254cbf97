#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wedge/acceptance.hpp"
#include "wedge/config.hpp"
#include "wedge/experiments.hpp"
#include "wedge/types.hpp"

namespace {

// Exit codes: 0 ok, 2 config error, 3 solver failure, 4 acceptance failures.
constexpr int kOk = 0, kConfigError = 2, kSolverError = 3, kAcceptanceFail = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wedgeflow: exact Riemann solvers and wave-front tracking on a wedge domain"};
    app.require_subcommand(1);

    std::string config_path, preset_name, output_dir;
    std::vector<std::string> overrides;
    int jobs = -1;
    long long seed = -1;

    CLI::App* run_cmd = app.add_subcommand("run", "run an experiment described by a config file");
    run_cmd->add_option("config", config_path, "path to a [section] key=value config")->required();

    std::string preset_help = "one of:";
    for (const std::string& n : wedge::preset_names()) preset_help += " " + n;
    preset_help += " acceptance";
    CLI::App* preset_cmd = app.add_subcommand("preset", "run a built-in experiment preset");
    preset_cmd->add_option("name", preset_name, preset_help)->required();

    for (CLI::App* cmd : {run_cmd, preset_cmd}) {
        cmd->add_option("-O,--override", overrides, "config override section.key=value");
        cmd->add_option("-j,--jobs", jobs, "worker threads (0 = hardware concurrency)");
        cmd->add_option("-o,--output", output_dir, "output directory");
        cmd->add_option("-s,--seed", seed, "initial data seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (preset_cmd->parsed() && preset_name == "acceptance") {
            const std::string dir = output_dir.empty() ? "out/acceptance" : output_dir;
            const auto results = wedge::run_acceptance(dir, jobs < 0 ? 0 : jobs, std::cout);
            int failures = 0;
            for (const auto& r : results) failures += r.pass ? 0 : 1;
            std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                        : "acceptance: " + std::to_string(failures) +
                                              " criterion(s) failed\n");
            return failures == 0 ? kOk : kAcceptanceFail;
        }

        wedge::ExperimentConfig cfg = run_cmd->parsed()
                                          ? wedge::parse_config_file(config_path)
                                          : wedge::preset_config(preset_name);
        for (const std::string& o : overrides) wedge::apply_override(cfg, o);
        if (jobs >= 0) cfg.jobs = jobs;
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        wedge::run_experiment(cfg, std::cout);
        return kOk;
    } catch (const wedge::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverError;
    }
}
