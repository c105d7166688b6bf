#include <iostream>
#include <string>
#include <vector>

#include "banditrank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return banditrank::cli_main(args, std::cout, std::cerr);
}
