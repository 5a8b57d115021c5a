#include <iostream>

#include "dendric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dendric::cli::run(args, std::cout, std::cerr);
}
