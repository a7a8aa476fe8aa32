#ifndef POLSIM_CONFIG_HPP_
#define POLSIM_CONFIG_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polsim/core.hpp"
#include "polsim/polariton.hpp"

namespace polsim {

enum class RunMode { kSimulateFull, kSimulateReduced, kFeasibility, kValidate };

// Distinct exit codes per failure class, used by the CLI.
struct ConfigError : std::runtime_error {
    int exitCode;
    ConfigError(int code, const std::string& what)
        : std::runtime_error(what), exitCode(code) {}
};
struct ConfigIoError : ConfigError {
    explicit ConfigIoError(const std::string& w) : ConfigError(2, w) {}
};
struct ConfigSyntaxError : ConfigError {
    explicit ConfigSyntaxError(const std::string& w) : ConfigError(3, w) {}
};
struct ConfigUnknownKeyError : ConfigError {
    explicit ConfigUnknownKeyError(const std::string& w) : ConfigError(4, w) {}
};
struct ConfigInvariantError : ConfigError {
    explicit ConfigInvariantError(const std::string& w) : ConfigError(5, w) {}
};

struct RunConfig {
    RunMode mode = RunMode::kValidate;
    MaterialSpec material;
    bool hasMaterial = false;
    DriveSchedule drive;
    bool hasDrive = false;
    ProbeSpec probe;
    bool hasProbe = false;
    SimGrid grid;
    bool hasGrid = false;
    ReducedMethod reducedMethod = ReducedMethod::kFourier;
    std::string outputDir = "out";
    bool writeCsv = true;
    bool writeJson = true;
    int workers = 0;  // 0: leave the OpenMP default
    std::vector<std::string> warnings;
};

// Strict parse: JSON with // comments, unknown keys rejected with their path,
// rates accepted as <key>_radps or <key>_Hz (converted once, here).
RunConfig parse_config(const std::string& path,
                       std::optional<RunMode> modeOverride = {});

// Executes a parsed config. Returns the process exit code; partial outputs
// are removed if the run fails.
int run(const RunConfig& config);

// Built-in oracle suite for `validate` mode; prints one line per check.
bool run_validation_suite(bool quick = false);

}  // namespace polsim

#endif  // POLSIM_CONFIG_HPP_
