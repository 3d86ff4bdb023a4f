#include <iostream>
#include <string>
#include <vector>

#include "pcsync_cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pcsync::cli::run_command(args, std::cin, std::cout, std::cerr);
}
