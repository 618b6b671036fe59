#pragma once

#include <string>
#include <vector>

namespace sml::cli {

inline constexpr int kExitPositive = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;

const std::vector<std::string>& commands();

struct Request {
  std::string command;
  std::vector<std::string> inputs;
  std::string format = "json";
  /// Restricts the analysis to these entity names; empty means all.
  std::vector<std::string> names;
};

struct Result {
  int exit_code = kExitUsage;
  std::string report;  // stdout bytes
  std::string error;   // stderr bytes
};

/// Never throws; parse and usage problems map to exit code 64.
Result run(const Request& request);

int main_entry(int argc, char** argv);

}  // namespace sml::cli
