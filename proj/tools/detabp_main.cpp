#include <iostream>
#include <vector>

#include "detabp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return detabp::cli::run(args, std::cout, std::cerr);
}
