#include <iostream>
#include <string>
#include <vector>

#include "whilep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return whilep::run_cli(args, std::cout, std::cerr);
}
