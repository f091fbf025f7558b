// dualrail_main.cpp -- thin entry point; all behavior lives in cli.hpp so the
// tests can drive run_cli directly.
#include <string>
#include <vector>

#include "dualrail/cli.hpp"

int main(int argc, char** argv) {
  return dualrail::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
