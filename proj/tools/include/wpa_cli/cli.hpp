#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wpa::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kCapOrUndecided = 3 };

/// Everything one invocation produced. `report` is the JSON report (also for
/// failed runs, where it carries the error); `output` is what goes to stdout
/// in the selected format.
struct RunReport {
  int exit_code = kOk;
  nlohmann::ordered_json report;
  std::string output;
  std::string error;  // message for stderr
};

/// Runs one command line; args[0] is the program name.
RunReport run(const std::vector<std::string>& args);

}  // namespace wpa::cli
