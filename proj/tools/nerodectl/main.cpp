#include <iostream>
#include <string>
#include <vector>

#include "nerodectl/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const nerode::cli::RunReport report = nerode::cli::run(args);
  std::cout << report.out;
  std::cerr << report.err;
  return report.exit_code;
}
