#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "polsim/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Dark-state polariton storage in inhomogeneously broadened "
                 "solids: full Maxwell-Bloch simulator, reduced polariton "
                 "model and storage feasibility calculator"};
    app.require_subcommand(0, 1);

    std::string configPath, outputDir, formats;
    int workers = 0;
    auto add_common = [&](CLI::App* sub, bool needConfig) {
        auto* opt = sub->add_option("--config", configPath, "config file (JSON, // comments allowed)");
        if (needConfig) opt->required();
        sub->add_option("--output", outputDir, "output directory (overrides config)");
        sub->add_option("--workers", workers, "cap worker threads");
        sub->add_option("--format", formats, "comma-separated subset of csv,json");
    };

    auto* full = app.add_subcommand("simulate-full",
                                    "integrate the full atomic ensemble through "
                                    "a storage/retrieval protocol");
    add_common(full, true);
    auto* reduced = app.add_subcommand("simulate-reduced",
                                       "evolve the reduced dark-polariton model");
    add_common(reduced, true);
    auto* feas = app.add_subcommand("feasibility",
                                    "evaluate every storage condition for a "
                                    "material and protocol");
    add_common(feas, true);
    auto* val = app.add_subcommand("validate",
                                   "run the built-in oracle suite");
    add_common(val, false);

    CLI11_PARSE(app, argc, argv);

    std::optional<polsim::RunMode> mode;
    if (full->parsed()) mode = polsim::RunMode::kSimulateFull;
    if (reduced->parsed()) mode = polsim::RunMode::kSimulateReduced;
    if (feas->parsed()) mode = polsim::RunMode::kFeasibility;
    if (val->parsed()) mode = polsim::RunMode::kValidate;

    try {
        polsim::RunConfig cfg;
        if (!configPath.empty()) {
            cfg = polsim::parse_config(configPath, mode);
        } else if (mode == polsim::RunMode::kValidate) {
            cfg.mode = polsim::RunMode::kValidate;
        } else {
            std::fprintf(stderr, "error: --config required\n");
            return 2;
        }
        if (!outputDir.empty()) cfg.outputDir = outputDir;
        if (workers > 0) cfg.workers = workers;
        if (!formats.empty()) {
            cfg.writeCsv = formats.find("csv") != std::string::npos;
            cfg.writeJson = formats.find("json") != std::string::npos;
        }
        return polsim::run(cfg);
    } catch (const polsim::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exitCode;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 6;
    }
}
