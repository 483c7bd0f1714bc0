#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace urysohn {

/// Exit-code contract of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitTheory = 2,
    kExitNonConvergence = 3,
    kExitResolution = 4,
    kExitConfig = 64,
};

struct CliArgs {
    std::string command;  // check | solve | robustness | density | sweep
    std::filesystem::path config;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    /// solve: read the control from this file instead of drawing one.
    std::optional<std::filesystem::path> control_file;
    /// solve: q-norm of the seeded control (defaults to r).
    std::optional<double> control_norm;
};

/// Runs one command and maps failures onto ExitCode. Diagnostics go to `err`.
int run_cli(const CliArgs& args, std::ostream& out, std::ostream& err);

}  // namespace urysohn
