#include <iostream>

#include "nos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nos::cli::run(args, std::cout, std::cerr);
}
