#include <iostream>
#include <string>
#include <vector>

#include "planrec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return planrec::run_cli(args, std::cout, std::cerr);
}
