#include <iostream>
#include <string>
#include <vector>

#include "qnlse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qnlse::run_cli(args, std::cout, std::cerr);
}
