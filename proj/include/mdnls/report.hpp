#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "mdnls/config.hpp"
#include "mdnls/experiments.hpp"

namespace mdnls {

/// Header row, then one record per row. Reals carry 17 significant digits,
/// strings are quoted when they contain a comma, quote or line break.
void write_csv(std::ostream& out, const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);

/// Verdict, checks with their tolerances, fitted exponents and notes.
std::string summary_text(const ExperimentReport& report);

/// Writes report.csv, summary.txt and resolved.cfg into `dir`, creating it.
void write_outputs(const std::filesystem::path& dir, const ExperimentReport& report, const RunConfig& config);

}  // namespace mdnls
