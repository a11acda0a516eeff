#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return framelab::cli::run(args, std::cin, std::cout, std::cerr, std::getenv("FRAMELAB_TOL"));
}
