// commands.hpp: the four CLI subcommands behind a testable interface.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsdspin {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_numerical = 2, exit_validation = 3 };

struct CommandOptions {
    std::string config_path;            // empty: no file
    std::vector<std::string> overrides; // "key=value", applied after the file
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string input;        // analyze: trajectory CSV
    std::string command_line; // recorded in output headers
};

/// Runs "simulate", "ensemble", "analyze" or "validate". Progress and
/// results go to `out`; failures are written to `err` as one JSON object
/// {"error": kind, "message": ..., ...} and mapped to an ExitCode.
int run_command(const std::string& subcommand, const CommandOptions& options, std::ostream& out,
                std::ostream& err);

} // namespace qsdspin
