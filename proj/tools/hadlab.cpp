#include <iostream>
#include <string>
#include <vector>

#include "hadlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hadlab::run_command(args, std::cout, std::cerr);
}
