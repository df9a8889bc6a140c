#include <iostream>
#include <string>
#include <vector>

#include "srl/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return srl::run_cli(args, std::cout, std::cerr);
}
