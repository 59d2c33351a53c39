#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "problem.hpp"

namespace icis::cli {

inline constexpr const char* kToolName = "icis";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

const std::vector<std::string>& subcommands();

// Path budget for the depend subcommand.
inline constexpr int kPathBudget = 3;

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;
};

/// Runs one subcommand on a parsed problem. Engine failures end up in the report; only
/// problems with the request itself (unknown subcommand, too few points) throw.
RunResult run_subcommand(const std::string& name, const ProblemFile& pf, bool timing = false);

/// Plain-text rendering of a report.
std::string human(const nlohmann::ordered_json& report);

}  // namespace icis::cli
