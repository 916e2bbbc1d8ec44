#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rotorlin {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitConvergence = 3,
    kExitNumerical = 4,
};

struct CliEnv {
    std::optional<std::string> config_path;  // ROTORLIN_CONFIG
    std::optional<std::string> timestamp;     // fixed manifest timestamp, for tests
};

CliEnv env_from_process();

/// Runs one command line (args[0] is the program name). Primary output goes to out
/// unless redirected with -o; diagnostics go to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const CliEnv& env = env_from_process());

}  // namespace rotorlin
