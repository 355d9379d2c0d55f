#include <iostream>
#include <string>
#include <vector>

#include "deltaring/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const deltaring::CommandResult result = deltaring::run_command(args);
  std::cout << result.output;
  return result.exit_code;
}
