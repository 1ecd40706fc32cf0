#include <iostream>

#include "posslog/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return posslog::run_cli(args, std::cout, std::cerr);
}
