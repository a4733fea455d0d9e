#include <iostream>

#include "pcext/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pcext::run_cli(args, std::cout, std::cerr);
}
