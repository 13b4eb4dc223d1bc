#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace embedlab::cli {

enum ExitCode : int { kPass = 0, kViolations = 1, kUsage = 2, kBudget = 3 };

struct ParamSpec {
  std::string name;
  std::string default_value;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& command_table();
const CommandSpec& find_command(const std::string& name);

/// Fills every missing parameter of cfg with its default and rejects
/// unknown ones.
ExperimentConfig complete(ExperimentConfig cfg);

struct RunResult {
  int exit_code = kPass;
  std::string text;     // body of the text report
  nlohmann::json json;  // body of the json report
};

/// Runs a completed config. Library errors propagate.
RunResult run(const ExperimentConfig& cfg);

/// run() plus rendering and error mapping: parse and domain errors give
/// kUsage, budget exhaustion kBudget.
int run_and_print(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

std::vector<std::string> split_list(const std::string& text, char sep = ';');

}  // namespace embedlab::cli
