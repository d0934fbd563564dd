#include <iostream>
#include <string>
#include <vector>

#include "kcm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kcm::run_cli(args, std::cout, std::cerr);
}
