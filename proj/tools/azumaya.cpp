#include "azumaya/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return azumaya::cli::dispatch(args, std::cout, std::cerr);
}
