#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mdnls/config.hpp"
#include "mdnls/experiments.hpp"

namespace mdnls {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_error = 2 };

/// Builds the driver inputs from a resolved config and runs it.
ExperimentReport run_experiment(const RunConfig& config);

/// `mdnls <subcommand> --config <path> [--out <dir>]`. Returns 0 on a pass
/// verdict, 1 on a fail verdict, 2 on any usage, config or runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace mdnls
