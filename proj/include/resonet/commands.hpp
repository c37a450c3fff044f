// commands.hpp — Subcommands of the resonet tool
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 oracle validation mismatch.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "resonet/scenario.hpp"

namespace resonet::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalFailure = 2, kValidationMismatch = 3 };

struct SweepRequest {
    std::string parameter;  // epsilon | N | alpha | lambda
    std::vector<double> values;
};

// Each command writes into out (created if needed) and returns an exit code.
// Progress goes to log, diagnostics to err.
int cmd_modes(const ScenarioConfig& cfg, const std::filesystem::path& out, std::ostream& log, std::ostream& err);
int cmd_evolve(const ScenarioConfig& cfg, const std::filesystem::path& out, std::ostream& log, std::ostream& err);
int cmd_classify(const ScenarioConfig& cfg, const std::filesystem::path& out, std::ostream& log, std::ostream& err);
int cmd_oracle_compare(const ScenarioConfig& cfg, const std::filesystem::path& out, double threshold,
                       std::ostream& log, std::ostream& err);
int cmd_sweep(const ScenarioConfig& cfg, const SweepRequest& sweep, const std::filesystem::path& out,
              std::ostream& log, std::ostream& err);

// Full argument handling: resonet <subcommand> --config <path> [flags].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace resonet::cli
