#pragma once

#include <string>
#include <vector>

namespace nerode::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFails = 1,
  kUsageOrInputError = 2,
};

/// Everything a single invocation produces. `out` is the report (JSON or
/// text); `err` collects diagnostics.
struct RunReport {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"minimize", "--system", "delay2.json", "--mode", "rest"}.
/// Never throws; every failure maps onto an exit code. When --output is
/// given the report is written there and `out` is left empty.
RunReport run(const std::vector<std::string>& args);

}  // namespace nerode::cli
