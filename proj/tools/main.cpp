#include <iostream>

#include "spinpa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinpa::run_cli(args, std::cout, std::cerr);
}
