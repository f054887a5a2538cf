#include <iostream>

#include "domlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return domlab::cli::run(args, std::cout, std::cerr);
}
