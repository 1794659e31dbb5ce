#include <iostream>
#include <string>
#include <vector>

#include "falc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return falc::run_cli(args, std::cout, std::cerr);
}
